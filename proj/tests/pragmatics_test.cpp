#include <gtest/gtest.h>

#include <algorithm>

#include "implicate/pragmatics.hpp"

using namespace implicate;

namespace {

Term T(const char* s) { return parse_term(s); }
const Agent david{"david"};
const Agent simon{"simon"};

BeliefStore store_of(std::initializer_list<const char*> attitudes) {
  BeliefStore s;
  for (const char* a : attitudes) s = s.assert_attitude(T(a));
  return s;
}

PlanningContext context(std::set<Agent> agents) {
  PlanningContext ctx;
  ctx.agents = std::move(agents);
  ctx.reliability.set(kSystem);
  return ctx;
}

DialogueAct inform(const Agent& s, const Agent& h, const char* p) { return {"inform", s, h, T(p)}; }

// The state after the System has told Simon it deleted the subdirectory.
BeliefStore subdirectory_store() {
  BeliefStore s = store_of({
      "goal(system, bel(simon, deleted(system, subdirectory)))",
      "bel(system, deleted(system, subdirectory))",
      "bel(system, deleted(_, subdirectory) -> not(happy(david)))",
      "bel(system, bel(simon, deleted(_, subdirectory) -> not(happy(david))))",
  });
  const OperatorLibrary lib = OperatorLibrary::builtin();
  DialogueAct told = inform(kSystem, simon, "deleted(system, subdirectory)");
  s = speaker_update(s, told, lib).store;
  return accept_belief(s, viewpoint(simon), kSystem, told.proposition, true).store;
}

const std::vector<Term> kIronyGoals{T("goal(simon, bel(system, not(happy(david))))")};

}  // namespace

TEST(Verdict, Names) {
  for (Verdict v : {Verdict::conventional, Verdict::deception, Verdict::mistaken_belief, Verdict::ambiguous,
                    Verdict::implicature})
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  EXPECT_FALSE(parse_verdict("Irony"));
}

TEST(Classify, Conventional) {
  Classification c = classify(BeliefStore(), inform(david, kSystem, "p"), {}, context({kSystem, david}));
  EXPECT_EQ(c.verdict, Verdict::conventional);
  EXPECT_TRUE(c.blocked.empty());
  EXPECT_EQ(c.hearer_store.size(), 2u);
}

TEST(Classify, Deception) {
  BeliefStore s = store_of({"bel(system, not(p))", "bel(system, bel(david, not(p)))"});
  Classification c = classify(s, inform(david, kSystem, "p"), {}, context({kSystem, david}));
  EXPECT_EQ(c.verdict, Verdict::deception);
  EXPECT_FALSE(c.chain);
  ASSERT_FALSE(c.blocked.empty());
  EXPECT_EQ(c.blocked.front().attitude(), T("bel(system, bel(david, p))"));
}

TEST(Classify, MistakenBelief) {
  BeliefStore s = store_of({"bel(system, not(p))", "bel(system, bel(david, p))"});
  Classification c = classify(s, inform(david, kSystem, "p"), {}, context({kSystem, david}));
  EXPECT_EQ(c.verdict, Verdict::mistaken_belief);
  for (const AscriptionResult& r : c.conditions) EXPECT_FALSE(r.blocked());
  EXPECT_EQ(accept_belief(c.hearer_store, david, T("p"), true).outcome, Acceptance::rejected_contrary);
}

TEST(Classify, Ambiguous) {
  BeliefStore s = store_of({"bel(system, not(p))"});
  Classification c = classify(s, inform(david, kSystem, "p"), {}, context({kSystem, david}));
  EXPECT_EQ(c.verdict, Verdict::ambiguous);
}

TEST(Classify, DerivedContraryCountsAsDeception) {
  BeliefStore s = store_of({"bel(system, q)", "bel(system, q -> not(p))", "bel(system, bel(david, q))",
                            "bel(system, bel(david, q -> not(p)))"});
  // Without the System in David's model there is no level-3 simulation.
  Classification c = classify(s, inform(david, kSystem, "p"), {}, context({kSystem, david}));
  EXPECT_NE(c.verdict, Verdict::conventional);
  EXPECT_NE(c.verdict, Verdict::mistaken_belief);
}

TEST(EliminationChain, SubdirectoryExample) {
  auto chain = derive_elimination_chain(subdirectory_store(), inform(simon, kSystem, "happy(david)"));
  ASSERT_TRUE(chain);
  ASSERT_EQ(chain->entries.size(), 4u);
  EXPECT_EQ(chain->entries[0].label, "i");
  EXPECT_EQ(chain->entries[0].attitude, T("bel(system, bel(simon, not(happy(david))))"));
  EXPECT_EQ(chain->entries[1].label, "ii");
  EXPECT_EQ(chain->entries[1].attitude,
            T("bel(system, bel(simon, bel(system, deleted(_, subdirectory) -> not(happy(david)))))"));
  EXPECT_EQ(chain->entries[2].attitude, T("bel(system, bel(simon, bel(system, not(happy(david)))))"));
  EXPECT_EQ(chain->level4(), T("bel(system, bel(simon, bel(system, bel(simon, not(happy(david))))))"));
}

TEST(EliminationChain, NeedsADerivation) {
  // An explicitly held contrary with nothing behind it cannot be simulated.
  BeliefStore s = store_of({"bel(system, not(p))", "bel(system, bel(david, not(p)))"});
  EXPECT_FALSE(derive_elimination_chain(s, inform(david, kSystem, "p")));
}

TEST(Recognize, FindsTheFivestepPlan) {
  PlanningContext ctx = context({kSystem, simon});
  auto rec = recognize(subdirectory_store(), inform(simon, kSystem, "happy(david)"), kIronyGoals, ctx,
                       {T("not(happy(david))")});
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->plan.size(), 5u);
  for (const char* op : {"inform", "ascribe", "modus_ponens", "accept_belief"})
    EXPECT_TRUE(rec->plan.contains_step(op)) << op;
  EXPECT_EQ(rec->matched_goal, kIronyGoals[0]);
}

TEST(Recognize, NoPlanWithoutAscribableGoal) {
  PlanningContext ctx = context({kSystem, simon});
  EXPECT_FALSE(recognize(subdirectory_store(), inform(simon, kSystem, "happy(david)"),
                         {T("goal(simon, bel(system, raining))")}, ctx));
}

TEST(Classify, Implicature) {
  PlanningContext ctx = context({kSystem, simon});
  Classification c = classify(subdirectory_store(), inform(simon, kSystem, "happy(david)"), kIronyGoals, ctx);
  ASSERT_EQ(c.verdict, Verdict::implicature);
  ASSERT_TRUE(c.interpreted && c.plan && c.divergence);
  Term level4 = T("bel(system, bel(simon, bel(system, bel(simon, not(happy(david))))))");
  EXPECT_NE(std::find(c.derived.begin(), c.derived.end(), level4), c.derived.end());
  EXPECT_EQ(to_string(*c.divergence), "divergent(3)");
  EXPECT_TRUE(c.interpreted->contains(AttitudePath::root().goal(simon), T("bel(system, not(happy(david)))")));
  EXPECT_FALSE(c.interpreted->contains(AttitudePath::root().goal(simon), T("bel(system, happy(david))")));
  EXPECT_EQ(c.plan->blocks.size(), 2u);
  bool goal_blocked = std::any_of(c.conditions.begin(), c.conditions.end(), [](const AscriptionResult& r) {
    return r.blocked() && r.target_path.ends_with_goal() && r.evidence &&
           r.evidence->source == Evidence::Source::conflicting_goal;
  });
  EXPECT_TRUE(goal_blocked);
}

TEST(Classify, IronyWithoutGoalIsAmbiguous) {
  PlanningContext ctx = context({kSystem, simon});
  Classification c = classify(subdirectory_store(), inform(simon, kSystem, "happy(david)"), {}, ctx);
  EXPECT_EQ(c.verdict, Verdict::ambiguous);
  EXPECT_TRUE(c.chain);
}

TEST(Viewpoint, FlattenAndReduce) {
  BeliefStore s = subdirectory_store();
  std::set<Term> flat = flatten_viewpoint(s, simon);
  EXPECT_TRUE(flat.count(T("deleted(system, subdirectory)")));
  EXPECT_TRUE(flat.count(T("bel(system, deleted(system, subdirectory))")));
  Reliability r;
  r.set(kSystem);
  std::set<Term> reduced = reduce_context(flat, simon, r);
  EXPECT_FALSE(reduced.count(T("deleted(system, subdirectory)")));
  EXPECT_TRUE(reduced.count(T("bel(system, deleted(system, subdirectory))")));
  EXPECT_EQ(reduce_context(flat, simon, Reliability()), flat);
}

TEST(Divergence, DirectWhenNothingShorter) {
  StripsDomain d({{"ab", {}, {T("a")}, {T("b")}, false}});
  auto p = plan({T("a")}, {T("b")}, d, 3);
  ASSERT_TRUE(p);
  Divergence v = divergence(*p, {T("a")}, T("b"), d, 3);
  EXPECT_EQ(v.kind, Divergence::Kind::direct);
  EXPECT_EQ(to_string(v), "direct");
}
