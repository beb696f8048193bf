#include "implicate/dialogue_acts.hpp"

#include <algorithm>

#include "implicate/error.hpp"

namespace implicate {

namespace {

Term v(const char* name) { return Term::var(name); }
Term bel(Term who, Term what) { return Term::compound("bel", {std::move(who), std::move(what)}); }
Term goal(Term who, Term what) { return Term::compound("goal", {std::move(who), std::move(what)}); }

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var() && !t.is_wildcard()) out.insert(t.name());
  for (const Term& a : t.args()) collect_vars(a, out);
}

Substitution act_bindings(const PlanOperator& op, const DialogueAct& act) {
  Substitution s;
  const Term values[] = {Term::atom(act.speaker.name), Term::atom(act.hearer.name), act.proposition};
  for (std::size_t i = 0; i < 3; ++i)
    if (!s.bind(op.params[i], values[i])) throw Error("cannot bind " + op.params[i].str() + " in " + op.name);
  return s;
}

}  // namespace

Term DialogueAct::term() const {
  return Term::compound(name, {Term::atom(speaker.name), Term::atom(hearer.name), proposition});
}

DialogueAct DialogueAct::from_term(const Term& t) {
  if (!t.is_compound() || t.arity() != 3 || !t.arg(0).is_atom() || !t.arg(1).is_atom())
    throw Error("a dialogue act is written name(speaker, hearer, proposition), got " + t.str());
  if (!t.arg(2).is_ground()) throw Error("dialogue act proposition must be ground: " + t.str());
  DialogueAct act{t.name(), Agent{t.arg(0).name()}, Agent{t.arg(1).name()}, t.arg(2)};
  if (act.speaker == act.hearer) throw Error("speaker and hearer must differ: " + t.str());
  return act;
}

OperatorLibrary OperatorLibrary::builtin() {
  OperatorLibrary lib;
  const Term S = v("Speaker"), H = v("Hearer"), P = v("Proposition");
  lib.ops_.emplace("inform", PlanOperator{"inform", {S, H, P}, {bel(S, P), goal(S, bel(H, P))}, {}, true});
  const Term A = v("Agent"), B = v("Other"), X = v("X");
  lib.ops_.emplace("accept_belief",
                   PlanOperator{"accept_belief", {A, B, X}, {bel(A, bel(B, X))}, {bel(A, X)}, true});
  lib.ops_.emplace("ascribe", PlanOperator{"ascribe", {A, B, X}, {bel(A, X)}, {bel(A, bel(B, X))}, true});
  const Term R = v("Rule"), F = v("Fact"), C = v("Conclusion");
  lib.ops_.emplace("modus_ponens",
                   PlanOperator{"modus_ponens", {A, R, F, C}, {bel(A, R), bel(A, F)}, {bel(A, C)}, true});
  return lib;
}

void OperatorLibrary::add(PlanOperator op) {
  if (op.name.empty()) throw Error("operator needs a name");
  if (ops_.count(op.name)) throw Error("operator " + op.name + " is already defined");
  for (const Term& p : op.params)
    if (!p.is_var() || p.is_wildcard()) throw Error("operator " + op.name + ": parameters must be variables");
  std::set<std::string> bound;
  for (const Term& p : op.params) collect_vars(p, bound);
  for (const Term& p : op.preconditions) collect_vars(p, bound);
  for (const Term& a : op.adds) {
    std::set<std::string> used;
    collect_vars(a, used);
    for (const std::string& name : used)
      if (!bound.count(name))
        throw Error("operator " + op.name + ": variable " + name + " in an add is not bound by params or preconditions");
  }
  op.builtin = false;
  std::string name = op.name;
  ops_.emplace(std::move(name), std::move(op));
}

const PlanOperator* OperatorLibrary::find(const std::string& name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const PlanOperator& OperatorLibrary::act_operator(const DialogueAct& act) const {
  const PlanOperator* op = find(act.name);
  if (!op || !op->is_dialogue_act()) throw UnknownAct("unknown dialogue act: " + act.name);
  return *op;
}

std::vector<Term> OperatorLibrary::conditions(const DialogueAct& act) const {
  const PlanOperator& op = act_operator(act);
  Substitution s = act_bindings(op, act);
  std::vector<Term> out;
  for (const Term& c : op.preconditions) out.push_back(substitute(c, s));
  return out;
}

std::vector<const PlanOperator*> OperatorLibrary::operators() const {
  std::vector<const PlanOperator*> out;
  for (const auto& [n, op] : ops_) out.push_back(&op);
  return out;
}

std::vector<const PlanOperator*> OperatorLibrary::dialogue_acts() const {
  std::vector<const PlanOperator*> out;
  for (const auto& [n, op] : ops_)
    if (op.is_dialogue_act()) out.push_back(&op);
  return out;
}

std::vector<PlanOperator> OperatorLibrary::declared() const {
  std::vector<PlanOperator> out;
  for (const auto& [n, op] : ops_)
    if (!op.builtin) out.push_back(op);
  return out;
}

ActUpdate speaker_update(const BeliefStore& store, const DialogueAct& act, const OperatorLibrary& lib) {
  const AttitudePath model_of_hearer = viewpoint(act.speaker).bel(act.hearer);
  ActUpdate out{store, {}};
  for (const Term& c : lib.conditions(act)) {
    auto [path, content] = place(model_of_hearer, c, store.max_depth());
    auto [next, res] = default_ascribe(out.store, path, content);
    out.store = std::move(next);
    out.results.push_back(std::move(res));
  }
  return out;
}

ActUpdate hearer_update(const BeliefStore& store, const DialogueAct& act, const OperatorLibrary& lib) {
  const AttitudePath hearer_view = viewpoint(act.hearer);
  ActUpdate out{store, {}};
  for (const Term& c : lib.conditions(act)) {
    auto [path, content] = place(hearer_view, c, store.max_depth());
    auto [next, res] = default_ascribe(out.store, path, content);
    out.store = std::move(next);
    out.results.push_back(std::move(res));
  }
  return out;
}

ActUpdate deception_update(const BeliefStore& store, const DialogueAct& act, const std::set<Term>& fraudulent,
                           const OperatorLibrary& lib) {
  const std::vector<Term> conds = lib.conditions(act);
  for (const Term& f : fraudulent)
    if (std::find(conds.begin(), conds.end(), f) == conds.end())
      throw NotFraudulent(f.str() + " is not a condition of " + act.term().str());
  const AttitudePath hearer_view = viewpoint(act.hearer);
  const Term speaker = Term::atom(act.speaker.name), hearer = Term::atom(act.hearer.name);
  ActUpdate out{store, {}};
  // Declared order, not set order, so traces follow the operator.
  for (const Term& c : conds) {
    if (!fraudulent.count(c)) continue;
    auto [path, content] = place(hearer_view, goal(speaker, bel(hearer, c)), store.max_depth());
    auto [next, res] = default_ascribe(out.store, path, content);
    out.store = std::move(next);
    out.results.push_back(std::move(res));
  }
  return out;
}

const char* to_string(Acceptance a) {
  switch (a) {
    case Acceptance::accepted: return "accepted";
    case Acceptance::rejected_contrary: return "rejected-contrary";
    case Acceptance::rejected_unreliable: return "rejected-unreliable";
  }
  return "?";
}

AcceptResult accept_belief(const BeliefStore& store, const Agent& speaker, const Term& p, bool reliable) {
  return accept_belief(store, AttitudePath::root(), speaker, p, reliable);
}

AcceptResult accept_belief(const BeliefStore& store, const AttitudePath& at, const Agent& speaker, const Term& p,
                           bool reliable) {
  const AttitudePath communicated = at.bel(speaker);
  if (!store.contains(communicated, p))
    throw NotCommunicated(communicated.wrap(p).str() + " does not hold");
  if (auto ev = store.contrary_evidence(at, p)) return {store, Acceptance::rejected_contrary, std::move(ev)};
  if (!reliable) return {store, Acceptance::rejected_unreliable, std::nullopt};
  auto [next, res] = default_ascribe(store, at, p);
  if (res.blocked()) return {store, Acceptance::rejected_contrary, res.evidence};
  return {std::move(next), Acceptance::accepted, std::nullopt};
}

std::pair<BeliefStore, Term> modus_ponens_step(const BeliefStore& store, const AttitudePath& path, const Term& rule,
                                               const Term& fact) {
  if (!rule.is_rule()) throw NoMatch(rule.str() + " is not a rule");
  Closure cl = store.closure_detail(path);
  if (!store.contains(path, rule) && !cl.contains(rule))
    throw NoMatch(rule.str() + " is not held at " + path.str());
  if (!cl.contains(fact)) throw NoMatch(fact.str() + " is not held at " + path.str());
  auto s = unify(rule.arg(0), fact);
  if (!s) throw NoMatch(fact.str() + " does not match the antecedent of " + rule.str());
  Term conclusion = s->apply(rule.arg(1));
  if (!storable(conclusion)) throw NoMatch("conclusion " + conclusion.str() + " is not ground");
  return {store.insert(path, conclusion), conclusion};
}

}  // namespace implicate
