#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "implicate/ascription.hpp"
#include "implicate/belief_store.hpp"
#include "implicate/dialogue_acts.hpp"
#include "implicate/planner.hpp"
#include "implicate/pragmatics.hpp"

namespace implicate {

struct Expectation {
  enum class Kind { verdict, holds, not_holds, plan_contains, blocked };
  std::size_t after_turn;  // 1-based
  Kind kind;
  std::string payload;  // verdict name or operator name
  std::optional<Term> term;
  int line = 0;

  friend bool operator==(const Expectation& a, const Expectation& b) {
    return a.after_turn == b.after_turn && a.kind == b.kind && a.payload == b.payload && a.term == b.term;
  }
};

const char* to_string(Expectation::Kind k);

struct Scenario {
  std::vector<Agent> agents;  // declaration order; system first
  Reliability reliability;
  std::vector<Term> common;
  std::vector<Stereotype> stereotypes;
  std::vector<PlanOperator> operators;
  std::vector<Term> initial;
  std::vector<Term> goalset;
  std::vector<DialogueAct> turns;
  std::vector<Expectation> expectations;

  OperatorLibrary library() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParseError for syntax and ValidationError for semantic problems,
/// both carrying line and column.
Scenario parse_scenario(const std::string& text, std::size_t max_depth = kDefaultMaxDepth);

/// Canonical text; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

struct RunOptions {
  std::size_t max_depth = kDefaultMaxDepth;
  std::size_t plan_bound = 6;
};

struct StereotypeFiring {
  std::string name;
  std::vector<AscriptionResult> results;
};

struct TurnRecord {
  std::size_t index;
  DialogueAct act;
  /// Set when the System spoke: its model of the hearer's reading.
  std::vector<AscriptionResult> speaker_results;
  std::optional<Classification> classification;
  std::vector<AscriptionResult> deception_results;
  std::optional<Acceptance> acceptance;
  std::optional<Evidence> acceptance_evidence;
  std::vector<StereotypeFiring> stereotypes;
  BeliefStore store;
};

struct ExpectationResult {
  Expectation expectation;
  bool passed;
  std::string detail;
};

struct Report {
  std::string name;
  std::vector<AscriptionResult> common_results;
  BeliefStore initial;
  std::vector<TurnRecord> turns;
  std::vector<ExpectationResult> expectations;

  bool all_passed() const;
  std::size_t passed() const;
};

/// Runs every turn in order and checks the expectations. Engine errors are
/// rethrown as Error with the turn number prepended.
Report run_scenario(const Scenario& sc, const RunOptions& opts = {}, const std::string& name = "");

/// Human-readable output. Without `full`, only expectation results.
std::string render_text(const Report& r, bool full);
/// JSON document with stable key order.
std::string render_json(const Report& r, int indent = 2);

}  // namespace implicate
