#include <algorithm>

#include "implicate/error.hpp"
#include "implicate/scenario.hpp"

namespace implicate {

bool Report::all_passed() const { return passed() == expectations.size(); }

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::count_if(expectations.begin(), expectations.end(), [](const ExpectationResult& e) { return e.passed; }));
}

namespace {

PlanningContext planning_context(const Scenario& sc, const RunOptions& opts) {
  PlanningContext ctx;
  ctx.agents = {sc.agents.begin(), sc.agents.end()};
  ctx.reliability = sc.reliability;
  ctx.ops = sc.library();
  ctx.bound = opts.plan_bound;
  return ctx;
}

std::vector<StereotypeFiring> fire_stereotypes(BeliefStore& store, const Scenario& sc, const DialogueAct& act) {
  std::vector<StereotypeFiring> out;
  const Term event = act.term();
  for (const Stereotype& st : sc.stereotypes) {
    auto bindings = match_trigger(st, event);
    if (!bindings) continue;
    auto [next, results] = stereotypical_ascribe(store, st, *bindings);
    store = std::move(next);
    out.push_back({st.name, std::move(results)});
  }
  return out;
}

void run_turn(TurnRecord& rec, BeliefStore& store, const Scenario& sc, const PlanningContext& ctx) {
  const DialogueAct& act = rec.act;
  if (act.speaker == kSystem) {
    ActUpdate su = speaker_update(store, act, ctx.ops);
    rec.speaker_results = su.results;
    store = su.store;
    // The System expects the hearer to take its word when it is reliable.
    if (store.contains(viewpoint(act.hearer).bel(kSystem), act.proposition)) {
      AcceptResult ar = accept_belief(store, viewpoint(act.hearer), kSystem, act.proposition,
                                      ctx.reliability.reliable(kSystem, act.proposition));
      rec.acceptance = ar.outcome;
      rec.acceptance_evidence = ar.evidence;
      store = ar.store;
    }
    rec.stereotypes = fire_stereotypes(store, sc, act);
    return;
  }

  Classification c = classify(store, act, sc.goalset, ctx);
  const bool reliable = ctx.reliability.reliable(act.speaker, act.proposition);
  switch (c.verdict) {
    case Verdict::conventional:
    case Verdict::mistaken_belief: {
      store = c.hearer_store;
      // Acts that do not convey the speaker's belief give nothing to accept.
      if (!store.contains(viewpoint(act.speaker), act.proposition)) break;
      AcceptResult ar = accept_belief(store, act.speaker, act.proposition, reliable);
      rec.acceptance = ar.outcome;
      rec.acceptance_evidence = ar.evidence;
      store = ar.store;
      break;
    }
    case Verdict::deception: {
      std::set<Term> fraudulent;
      const std::vector<Term> conds = ctx.ops.conditions(act);
      for (std::size_t i = 0; i < conds.size() && i < c.conditions.size(); ++i)
        if (c.conditions[i].blocked()) fraudulent.insert(conds[i]);
      ActUpdate du = deception_update(c.hearer_store, act, fraudulent, ctx.ops);
      rec.deception_results = du.results;
      store = du.store;
      break;
    }
    case Verdict::implicature:
      store = *c.interpreted;
      break;
    case Verdict::ambiguous:
      break;
  }
  if (c.verdict != Verdict::ambiguous) rec.stereotypes = fire_stereotypes(store, sc, act);
  rec.classification = std::move(c);
}

ExpectationResult check(const Expectation& e, const TurnRecord& rec) {
  ExpectationResult r{e, false, ""};
  const auto& cls = rec.classification;
  switch (e.kind) {
    case Expectation::Kind::verdict:
      if (!cls) {
        r.detail = "the system spoke on this turn; nothing was classified";
      } else {
        r.passed = e.payload == to_string(cls->verdict);
        if (!r.passed) r.detail = std::string("got ") + to_string(cls->verdict);
      }
      break;
    case Expectation::Kind::holds:
    case Expectation::Kind::not_holds: {
      auto [path, content] = decompose(*e.term, rec.store.max_depth());
      bool holds = rec.store.holds(path, content);
      r.passed = (e.kind == Expectation::Kind::holds) == holds;
      if (!r.passed) r.detail = holds ? "present in the store" : "absent from the store";
      break;
    }
    case Expectation::Kind::plan_contains:
      r.passed = cls && cls->plan && cls->plan->contains_step(e.payload);
      if (!r.passed) r.detail = cls && cls->plan ? "no such step in the plan" : "no plan was recognized";
      break;
    case Expectation::Kind::blocked:
      if (cls) {
        r.passed = std::any_of(cls->blocked.begin(), cls->blocked.end(), [&](const AscriptionResult& b) {
          return unify(b.attitude(), *e.term).has_value();
        });
      }
      if (!r.passed) r.detail = "not among the blocked ascriptions";
      break;
  }
  return r;
}

}  // namespace

Report run_scenario(const Scenario& sc, const RunOptions& opts, const std::string& name) {
  Report report{name, {}, BeliefStore(opts.max_depth), {}, {}};
  const PlanningContext ctx = planning_context(sc, opts);

  BeliefStore store(opts.max_depth);
  for (const Term& t : sc.initial) store = store.assert_attitude(t);
  for (const Term& t : sc.common) {
    for (const Agent& a : sc.agents) {
      auto [path, content] = place(viewpoint(a), t, opts.max_depth);
      auto [next, res] = default_ascribe(store, path, content);
      store = std::move(next);
      report.common_results.push_back(std::move(res));
    }
  }
  report.initial = store;

  for (std::size_t i = 0; i < sc.turns.size(); ++i) {
    TurnRecord rec{i + 1, sc.turns[i], {}, std::nullopt, {}, std::nullopt, std::nullopt, {}, store};
    try {
      run_turn(rec, store, sc, ctx);
    } catch (const Error& e) {
      throw Error("turn " + std::to_string(i + 1) + ": " + e.what());
    }
    rec.store = store;
    report.turns.push_back(std::move(rec));
  }

  for (const Expectation& e : sc.expectations) report.expectations.push_back(check(e, report.turns.at(e.after_turn - 1)));
  return report;
}

}  // namespace implicate
