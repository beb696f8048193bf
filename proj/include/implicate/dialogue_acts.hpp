#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "implicate/ascription.hpp"
#include "implicate/belief_store.hpp"

namespace implicate {

/// A performed speech act, e.g. inform(david, system, p).
struct DialogueAct {
  std::string name;
  Agent speaker;
  Agent hearer;
  Term proposition;

  Term term() const;
  /// Reads name(speaker, hearer, proposition). Throws Error on bad shape.
  static DialogueAct from_term(const Term& t);

  friend bool operator==(const DialogueAct&, const DialogueAct&) = default;
};

/// Precondition schema. Operators with exactly (Speaker, Hearer, Proposition)
/// parameters and no adds are speech acts whose effects come entirely from
/// the ascription rules; the rest are planning steps with explicit adds.
struct PlanOperator {
  std::string name;
  std::vector<Term> params;
  std::vector<Term> preconditions;
  std::vector<Term> adds;
  bool builtin = false;

  bool is_dialogue_act() const { return params.size() == 3 && adds.empty(); }

  friend bool operator==(const PlanOperator& a, const PlanOperator& b) {
    return a.name == b.name && a.params == b.params && a.preconditions == b.preconditions && a.adds == b.adds;
  }
};

class OperatorLibrary {
 public:
  /// inform, accept_belief, ascribe and modus_ponens.
  static OperatorLibrary builtin();

  /// Throws Error when the name is taken or an add mentions a variable
  /// bound by neither the parameters nor the preconditions.
  void add(PlanOperator op);

  const PlanOperator* find(const std::string& name) const;
  /// The act's operator; throws UnknownAct.
  const PlanOperator& act_operator(const DialogueAct& act) const;
  /// The act's preconditions instantiated with speaker, hearer, proposition.
  std::vector<Term> conditions(const DialogueAct& act) const;

  std::vector<const PlanOperator*> operators() const;
  std::vector<const PlanOperator*> dialogue_acts() const;
  std::vector<PlanOperator> declared() const;

 private:
  std::map<std::string, PlanOperator> ops_;
};

struct ActUpdate {
  BeliefStore store;
  std::vector<AscriptionResult> results;
};

/// For each condition C of the act, bel(C) is default-ascribed into the
/// speaker's model of the hearer.
ActUpdate speaker_update(const BeliefStore& store, const DialogueAct& act, const OperatorLibrary& lib);

/// For each condition C of the act, C is default-ascribed into the hearer's
/// model of the speaker, in declared order.
ActUpdate hearer_update(const BeliefStore& store, const DialogueAct& act, const OperatorLibrary& lib);

/// For each fraudulently communicated condition C, ascribes
/// goal(Speaker, bel(Hearer, C)) into the hearer's viewpoint. Throws
/// NotFraudulent for terms outside the act's conditions.
ActUpdate deception_update(const BeliefStore& store, const DialogueAct& act, const std::set<Term>& fraudulent,
                           const OperatorLibrary& lib);

enum class Acceptance { accepted, rejected_contrary, rejected_unreliable };

const char* to_string(Acceptance a);

struct AcceptResult {
  BeliefStore store;
  Acceptance outcome;
  std::optional<Evidence> evidence;
};

/// The System adopts a speaker's communicated belief p.
AcceptResult accept_belief(const BeliefStore& store, const Agent& speaker, const Term& p, bool reliable);

/// Acceptance from any viewpoint: the agent whose beliefs live at `at` adopts
/// p from `speaker`. Requires p at at+[bel speaker]; throws NotCommunicated.
AcceptResult accept_belief(const BeliefStore& store, const AttitudePath& at, const Agent& speaker, const Term& p,
                           bool reliable);

/// One explicit inference: rule (A -> B) and a fact matching A, both at path
/// (the fact may be derived), add the instance of B. Throws NoMatch.
std::pair<BeliefStore, Term> modus_ponens_step(const BeliefStore& store, const AttitudePath& path, const Term& rule,
                                               const Term& fact);

}  // namespace implicate
