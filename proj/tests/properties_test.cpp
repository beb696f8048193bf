#include <gtest/gtest.h>

#include <algorithm>
#include <iostream>

#include "generators.hpp"
#include "implicate/error.hpp"
#include "implicate/scenario.hpp"

using namespace implicate;

namespace {

const Agent david{"david"};

Term literal_or_rule(gen::Rng& r) {
  static const std::vector<std::string> props{"p", "q", "r"};
  auto lit = [&] {
    Term a = Term::atom(r.pick(props));
    return r.coin(40) ? negate(a) : a;
  };
  if (r.coin(25)) return implies(lit(), lit());
  return lit();
}

// A few attitudes about p, q and r at the System's, David's and David's
// model of the System's viewpoints, plus optionally a System turn.
BeliefStore small_store(gen::Rng& r) {
  static const std::vector<AttitudePath> paths{AttitudePath::root(), viewpoint(david),
                                               viewpoint(david).bel(kSystem)};
  BeliefStore s;
  // Sometimes start from a thinned-out irony set-up: a shared rule whose
  // conclusion contradicts what David is about to say.
  if (r.coin(35)) {
    Term rule = implies(Term::atom("q"), negate(Term::atom(r.coin(80) ? "p" : "r")));
    if (r.coin(85)) s = default_ascribe(s, AttitudePath::root(), Term::atom("q")).first;
    if (r.coin(85)) s = default_ascribe(s, AttitudePath::root(), rule).first;
    if (r.coin(85)) s = default_ascribe(s, viewpoint(david), rule).first;
  }
  for (int i = r.below(5); i > 0; --i) s = default_ascribe(s, r.pick(paths), literal_or_rule(r)).first;
  if (r.coin(50)) {
    static const OperatorLibrary lib = OperatorLibrary::builtin();
    Term fact = Term::atom(r.coin(70) ? "q" : "r");
    DialogueAct told{"inform", kSystem, david, fact};
    s = speaker_update(s, told, lib).store;
    if (s.contains(viewpoint(david).bel(kSystem), fact))
      s = accept_belief(s, viewpoint(david), kSystem, fact, true).store;
  }
  return s;
}

std::string scenario_text(gen::Rng& r) {
  static const std::vector<std::string> props{"p", "q", "r", "s(a)"};
  auto lit = [&] {
    std::string a = r.pick(props);
    return r.coin(30) ? "not(" + a + ")" : a;
  };
  std::string out = "agent david";
  if (r.coin(50)) out += r.coin(50) ? " reliable" : " reliable on p, s";
  out += "\nagent eve\n";
  if (r.coin(30)) out += "common " + lit() + " -> " + lit() + "\n";
  if (r.coin(30)) out += "stereotype st on inform(S, H, P): bel(S, P)\n";
  if (r.coin(20)) out += "op relay(A, B, X) pre: bel(A, X) add: bel(B, X)\n";
  for (int i = r.below(4); i > 0; --i) {
    static const std::vector<std::string> heads{"bel(system, ", "bel(system, bel(david, ", "bel(system, bel(eve, "};
    std::string h = r.pick(heads);
    out += "believe " + h + lit() + std::string(std::count(h.begin(), h.end(), '('), ')') + "\n";
  }
  if (r.coin(40)) out += "goalset goal(david, bel(system, not(" + r.pick(props) + ")))\n";
  int turns = 1 + r.below(2);
  for (int i = 0; i < turns; ++i)
    out += std::string("turn inform(") + (r.coin(70) ? "david" : "eve") + ", system, " + r.pick(props) + ")\n";
  out += "expect 1 verdict " + std::string(r.coin(50) ? "Conventional" : "Deception") + "\n";
  out += "expect " + std::to_string(turns) + " holds bel(system, " + r.pick(props) + ")\n";
  return out;
}

}  // namespace

TEST(Properties, UnificationSymmetricAndIdempotent) {
  gen::Rng rng(11);
  int unified = 0;
  for (int i = 0; i < 2000; ++i) {
    Term a = gen::any_term(rng, 3);
    Term b = gen::any_term(rng, 3);
    auto ab = unify(a, b);
    auto ba = unify(b, a);
    ASSERT_EQ(ab.has_value(), ba.has_value()) << a << " ~ " << b;
    if (!ab) continue;
    ++unified;
    EXPECT_EQ(ab->apply(a), ab->apply(b));
    EXPECT_EQ(ba->apply(a), ba->apply(b));
    EXPECT_EQ(ab->apply(ab->apply(a)), ab->apply(a));
    // Re-unifying under the result adds nothing.
    auto again = unify(a, b, *ab);
    ASSERT_TRUE(again);
    EXPECT_EQ(again->apply(a), ab->apply(a));
  }
  EXPECT_GT(unified, 200);
}

TEST(Properties, ContraryInvolution) {
  gen::Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    Term t = gen::any_term(rng, 3, false);
    if (rng.coin(50)) t = negate(t);
    if (t.is_negation() && t.arg(0).is_negation()) continue;
    EXPECT_EQ(contrary(contrary(t)), t);
    EXPECT_NE(contrary(t), t);
    EXPECT_EQ(t.is_negation(), !contrary(t).is_negation());
  }
}

TEST(Properties, AscriptionIdempotentAndBlockingStable) {
  gen::Rng rng(13);
  int blocked = 0;
  for (int i = 0; i < 1000; ++i) {
    BeliefStore s = small_store(rng);
    AttitudePath path = rng.coin(50) ? AttitudePath::root() : viewpoint(david);
    Term p = literal_or_rule(rng);
    auto [s1, r1] = default_ascribe(s, path, p);
    auto [s2, r2] = default_ascribe(s1, path, p);
    if (r1.blocked()) {
      ++blocked;
      EXPECT_EQ(s1, s);
      EXPECT_TRUE(r2.blocked());
      EXPECT_EQ(s2, s);
      // Still blocked after unrelated growth elsewhere.
      BeliefStore grown = default_ascribe(s, viewpoint(david).bel(kSystem), Term::atom("unrelated")).first;
      EXPECT_TRUE(default_ascribe(grown, path, p).second.blocked());
    } else {
      EXPECT_TRUE(s1.contains(path, p));
      EXPECT_FALSE(r2.blocked());
      EXPECT_EQ(s1, s2);
    }
  }
  EXPECT_GT(blocked, 50);
}

TEST(Properties, ClassificationExhaustiveAndExclusive) {
  gen::Rng rng(14);
  PlanningContext ctx;
  ctx.agents = {kSystem, david};
  ctx.reliability.set(kSystem);
  std::map<Verdict, int> seen;
  for (int i = 0; i < 2000; ++i) {
    BeliefStore s = small_store(rng);
    Term p = Term::atom(rng.coin(50) ? "p" : rng.pick(std::vector<std::string>{"q", "r"}));
    DialogueAct act{"inform", david, kSystem, p};
    std::vector<Term> goalset;
    if (rng.coin(60)) goalset.push_back(parse_term("goal(david, bel(system, not(" + p.str() + ")))"));

    Classification c = classify(s, act, goalset, ctx);
    ++seen[c.verdict];

    // The four cases, recomputed from the primitives.
    ActUpdate hu = hearer_update(s, act, ctx.ops);
    bool any_blocked = std::any_of(hu.results.begin(), hu.results.end(), [](auto& r) { return r.blocked(); }) ||
                       hu.store.contrary_evidence(AttitudePath::root(), p).has_value();
    bool conventional = !any_blocked;
    bool mistaken = any_blocked && s.contains(viewpoint(david), p) &&
                    s.contrary_evidence(AttitudePath::root(), p).has_value();
    bool contrary_held = any_blocked && !mistaken && s.closure(viewpoint(david)).count(contrary(p));
    bool residual = any_blocked && !mistaken && !contrary_held;
    ASSERT_EQ(conventional + mistaken + contrary_held + residual, 1);

    switch (c.verdict) {
      case Verdict::conventional:
        EXPECT_TRUE(conventional);
        EXPECT_TRUE(c.blocked.empty());
        break;
      case Verdict::mistaken_belief:
        EXPECT_TRUE(mistaken);
        EXPECT_EQ(accept_belief(c.hearer_store, david, p, true).outcome, Acceptance::rejected_contrary);
        break;
      case Verdict::deception:
        EXPECT_TRUE(contrary_held);
        EXPECT_FALSE(c.chain);
        break;
      case Verdict::implicature: {
        EXPECT_TRUE(contrary_held);
        ASSERT_TRUE(c.chain && c.interpreted && c.plan);
        EXPECT_NE(std::find(c.derived.begin(), c.derived.end(), c.chain->level4()), c.derived.end());
        EXPECT_TRUE(c.interpreted->contains(AttitudePath::root().goal(david),
                                            Term::compound("bel", {Term::atom("system"), contrary(p)})));
        break;
      }
      case Verdict::ambiguous:
        EXPECT_TRUE(residual || (contrary_held && c.chain));
        break;
    }
    EXPECT_EQ(c.plan.has_value(), c.verdict == Verdict::implicature);
  }
  for (const auto& [v, n] : seen) std::cout << "  " << to_string(v) << ": " << n << "\n";
  ASSERT_EQ(seen.size(), 5u);
  for (const auto& [v, n] : seen) EXPECT_GE(n, 20) << to_string(v);
}

TEST(Properties, TraceDeterminism) {
  gen::Rng rng(15);
  int ran = 0;
  for (int i = 0; i < 200; ++i) {
    Scenario sc;
    try {
      sc = parse_scenario(scenario_text(rng));
    } catch (const ScenarioError&) {
      continue;
    }
    Report a = run_scenario(sc, {}, "x");
    Report b = run_scenario(sc, {}, "x");
    ASSERT_EQ(render_text(a, true), render_text(b, true));
    ASSERT_EQ(render_json(a), render_json(b));
    ++ran;
  }
  EXPECT_GT(ran, 100);
}

TEST(Properties, ScenarioRoundTrip) {
  gen::Rng rng(16);
  int parsed = 0;
  for (int i = 0; i < 500; ++i) {
    std::string text = scenario_text(rng);
    Scenario sc;
    try {
      sc = parse_scenario(text);
    } catch (const ScenarioError&) {
      continue;
    }
    ++parsed;
    std::string canonical = render_scenario(sc);
    Scenario back = parse_scenario(canonical);
    ASSERT_EQ(back, sc) << text << "\n---\n" << canonical;
    ASSERT_EQ(render_scenario(back), canonical);
  }
  EXPECT_GT(parsed, 250);
}
