#include "implicate/pragmatics.hpp"

#include <algorithm>
#include <functional>

#include "implicate/error.hpp"

namespace implicate {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::conventional: return "Conventional";
    case Verdict::deception: return "Deception";
    case Verdict::mistaken_belief: return "MistakenBelief";
    case Verdict::ambiguous: return "Ambiguous";
    case Verdict::implicature: return "Implicature";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(const std::string& name) {
  for (Verdict v : {Verdict::conventional, Verdict::deception, Verdict::mistaken_belief, Verdict::ambiguous,
                    Verdict::implicature})
    if (name == to_string(v)) return v;
  return std::nullopt;
}

std::vector<Term> EliminationChain::terms() const {
  std::vector<Term> out;
  for (const ChainEntry& e : entries) out.push_back(e.attitude);
  return out;
}

namespace {

struct Inference {
  Term rule;
  Term fact;
};

struct Proof {
  std::vector<Term> leaves;
  std::vector<Inference> steps;  // in dependency order
};

// A derivation of `goal` at one environment that does not rest on goal
// itself being an explicit member.
std::optional<Proof> prove(const std::set<Term>& env, const Term& goal) {
  std::set<Term> base = env;
  base.erase(goal);
  Closure cl = close(base);
  if (!cl.derived.count(goal)) return std::nullopt;
  Proof proof;
  std::set<Term> seen;
  std::function<void(const Term&)> visit = [&](const Term& t) {
    if (!seen.insert(t).second) return;
    auto it = cl.derived.find(t);
    if (it == cl.derived.end()) {
      proof.leaves.push_back(t);
      return;
    }
    visit(it->second.rule);
    visit(it->second.fact);
    proof.steps.push_back({it->second.rule, it->second.fact});
  };
  visit(goal);
  return proof;
}

// Simulates one level down: the proof's premises are ascribed into `child`
// and its inferences replayed there.
bool descend(BeliefStore& store, const Proof& proof, const AttitudePath& child, const Term& goal,
             std::vector<ChainEntry>* rules_out) {
  try {
    for (const Term& leaf : proof.leaves) {
      if (leaf == goal) return false;
      auto [next, res] = default_ascribe(store, child, leaf);
      if (res.blocked()) return false;
      store = std::move(next);
      if (rules_out && leaf.is_rule()) rules_out->push_back({"ii", child.wrap(leaf)});
    }
    for (const Inference& step : proof.steps) store = modus_ponens_step(store, child, step.rule, step.fact).first;
  } catch (const Error&) {
    return false;
  }
  return store.contains(child, goal);
}

Term goal_term(const Agent& a, const Term& content) { return Term::compound("goal", {Term::atom(a.name), content}); }
Term bel_term(const Agent& a, const Term& content) { return Term::compound("bel", {Term::atom(a.name), content}); }

}  // namespace

std::optional<EliminationChain> derive_elimination_chain(const BeliefStore& store, const DialogueAct& act) {
  const Term neg = contrary(act.proposition);
  const AttitudePath l2 = viewpoint(act.speaker);
  const AttitudePath l3 = l2.bel(kSystem);
  const AttitudePath l4 = l3.bel(act.speaker);
  if (l2 == AttitudePath::root()) return std::nullopt;

  auto first = prove(store.environment_at(l2), neg);
  if (!first) return std::nullopt;
  EliminationChain chain{{{"i", l2.wrap(neg)}}, store};
  if (!descend(chain.store, *first, l3, neg, &chain.entries)) return std::nullopt;
  chain.entries.push_back({"iii", l3.wrap(neg)});

  auto second = prove(chain.store.environment_at(l3), neg);
  if (!second || !descend(chain.store, *second, l4, neg, nullptr)) return std::nullopt;
  chain.entries.push_back({"level-4", l4.wrap(neg)});
  return chain;
}

std::optional<Interpretation> interpret_implicature(const BeliefStore& store, const DialogueAct& act,
                                                    const EliminationChain& chain, const std::vector<Term>& goalset,
                                                    const PlanningContext& ctx) {
  const Term neg = contrary(act.proposition);
  const Term ironic = goal_term(act.speaker, bel_term(kSystem, neg));
  const Term speaker = Term::atom(act.speaker.name);

  std::vector<Term> candidates;
  std::vector<Term> others;
  for (const Term& g : goalset) {
    if (auto s = unify(g, ironic)) {
      Term inst = s->apply(g);
      if (std::find(candidates.begin(), candidates.end(), inst) == candidates.end()) candidates.push_back(inst);
    } else if (g.is("goal", 2)) {
      if (auto s = unify(g.arg(0), speaker)) {
        Term inst = s->apply(g);
        if (storable(inst.arg(1))) others.push_back(inst);
      }
    }
  }
  if (candidates.empty()) return std::nullopt;

  auto rec = recognize(store, act, candidates, ctx, {neg});
  if (!rec) return std::nullopt;

  const Term content = rec->matched_goal.arg(1);
  PragmaticDomain domain(act.speaker, std::nullopt, rec->universe, ctx, store.max_depth());
  Divergence div = divergence(rec->plan, rec->initial, content, domain, ctx.bound);

  Interpretation out{chain.store, *rec, div, {}, {}};
  const AttitudePath speaker_view = viewpoint(act.speaker);
  const AttitudePath speaker_goals = AttitudePath::root().goal(act.speaker);
  for (auto [path, term] : {std::pair{speaker_view, neg}, std::pair{speaker_goals, content}}) {
    auto [next, res] = default_ascribe(out.store, path, term);
    out.store = std::move(next);
    out.ascriptions.push_back(std::move(res));
  }

  if (div.kind == Divergence::Kind::divergent) {
    std::set<Term> final_state = rec->initial;
    for (const PlanStep& s : rec->plan.steps) final_state = progress(final_state, s.action);
    for (const Term& g : others) {
      const Term& extra = g.arg(1);
      if (extra == content || !final_state.count(extra) || rec->initial.count(extra)) continue;
      auto [next, res] = default_ascribe(out.store, speaker_goals, extra);
      if (res.blocked()) continue;
      out.store = std::move(next);
      out.additional_goals.push_back(res.attitude());
    }
  }

  const Term conventional = AttitudePath::root().wrap(goal_term(act.speaker, bel_term(kSystem, act.proposition)));
  out.recognition.plan.blocks.push_back({speaker_view.wrap(neg), speaker_view.wrap(act.proposition)});
  out.recognition.plan.blocks.push_back({speaker_goals.wrap(content), conventional});
  return out;
}

Classification classify(const BeliefStore& store, const DialogueAct& act, const std::vector<Term>& goalset,
                        const PlanningContext& ctx) {
  ActUpdate hu = hearer_update(store, act, ctx.ops);
  Classification c{Verdict::conventional, hu.results, {}, {}, std::nullopt, std::nullopt, std::nullopt,
                   std::nullopt, {}, hu.store, std::nullopt};
  for (const AscriptionResult& r : hu.results)
    if (r.blocked()) c.blocked.push_back(r);

  const AttitudePath root = AttitudePath::root();
  const AttitudePath speaker_view = viewpoint(act.speaker);
  const Term& p = act.proposition;
  if (auto ev = hu.store.contrary_evidence(root, p))
    c.blocked.push_back({AscriptionResult::Outcome::blocked, root, p, std::move(ev)});

  if (c.blocked.empty()) {
    c.verdict = Verdict::conventional;
  } else if (store.contains(speaker_view, p) && store.contrary_evidence(root, p)) {
    c.verdict = Verdict::mistaken_belief;
  } else if (store.closure(speaker_view).count(contrary(p))) {
    c.chain = derive_elimination_chain(store, act);
    if (!c.chain) {
      c.verdict = Verdict::deception;
    } else {
      c.derived = c.chain->terms();
      auto interp = interpret_implicature(store, act, *c.chain, goalset, ctx);
      if (!interp) {
        c.verdict = Verdict::ambiguous;
      } else {
        c.verdict = Verdict::implicature;
        auto note = [&](const Term& t) {
          if (std::find(c.derived.begin(), c.derived.end(), t) == c.derived.end()) c.derived.push_back(t);
        };
        for (const AscriptionResult& r : interp->ascriptions) note(r.attitude());
        for (const Term& g : interp->additional_goals) note(g);
        c.additional_goals = interp->additional_goals;
        c.plan = interp->recognition.plan;
        c.matched_goal = interp->recognition.matched_goal;
        c.divergence = interp->divergence;
        c.interpreted = interp->store;
        const Term ironic = interp->ascriptions.back().attitude();
        for (AscriptionResult& r : c.conditions) {
          if (r.blocked() || !r.target_path.ends_with_goal()) continue;
          r.outcome = AscriptionResult::Outcome::blocked;
          r.evidence = Evidence{Evidence::Source::conflicting_goal, ironic, std::nullopt, std::nullopt};
          c.blocked.push_back(r);
        }
      }
    }
  } else {
    c.verdict = Verdict::ambiguous;
  }
  return c;
}

}  // namespace implicate
