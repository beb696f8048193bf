#pragma once

#include <optional>
#include <string>
#include <vector>

#include "implicate/ascription.hpp"
#include "implicate/belief_store.hpp"
#include "implicate/dialogue_acts.hpp"
#include "implicate/planner.hpp"

namespace implicate {

enum class Verdict { conventional, deception, mistaken_belief, ambiguous, implicature };

/// Conventional, Deception, MistakenBelief, Ambiguous, Implicature.
const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(const std::string& name);

struct ChainEntry {
  std::string label;  // i, ii, iii or level-4
  Term attitude;
};

/// The nested simulation showing the speaker knows the System knows the
/// speaker believes not(P).
struct EliminationChain {
  std::vector<ChainEntry> entries;
  /// The input store plus every ascription and inference the chain made.
  BeliefStore store;

  std::vector<Term> terms() const;
  const Term& level4() const { return entries.back().attitude; }
};

std::optional<EliminationChain> derive_elimination_chain(const BeliefStore& store, const DialogueAct& act);

struct Interpretation {
  BeliefStore store;
  Recognition recognition;
  Divergence divergence;
  std::vector<AscriptionResult> ascriptions;
  std::vector<Term> additional_goals;
};

/// Recognizes a plan towards an ironic goal goal(S, bel(system, not(P)))
/// drawn from `goalset` and ascribes it. Absent when no goalset entry fits or
/// no plan is found within the bound.
std::optional<Interpretation> interpret_implicature(const BeliefStore& store, const DialogueAct& act,
                                                    const EliminationChain& chain, const std::vector<Term>& goalset,
                                                    const PlanningContext& ctx);

struct Classification {
  Verdict verdict;
  /// hearer_update results in operator order; for an implicature the
  /// conventional goal is re-marked as blocked by the ironic goal.
  std::vector<AscriptionResult> conditions;
  /// Blocked conditions, plus the System's own acceptance of P when that is
  /// blocked by contrary evidence.
  std::vector<AscriptionResult> blocked;
  std::vector<Term> derived;
  std::optional<EliminationChain> chain;
  std::optional<Plan> plan;
  std::optional<Term> matched_goal;
  std::optional<Divergence> divergence;
  std::vector<Term> additional_goals;
  /// Store after hearer_update.
  BeliefStore hearer_store;
  /// Store after an implicature has been interpreted.
  std::optional<BeliefStore> interpreted;
};

Classification classify(const BeliefStore& store, const DialogueAct& act, const std::vector<Term>& goalset,
                        const PlanningContext& ctx);

}  // namespace implicate
