#include <gtest/gtest.h>

#include "implicate/error.hpp"
#include "implicate/term.hpp"

using namespace implicate;

namespace {
Term T(const char* s) { return parse_term(s); }
}  // namespace

TEST(Term, RendersInfixRules) {
  EXPECT_EQ(T("a -> b").str(), "a -> b");
  EXPECT_TRUE(T("a -> b").is_rule());
  EXPECT_EQ(T("a -> b -> c"), implies(T("a"), implies(T("b"), T("c"))));
}

TEST(Term, ParsesNestedAttitudes) {
  Term t = T("bel(system, bel(simon, not(happy(david))))");
  EXPECT_TRUE(t.is_attitude());
  EXPECT_EQ(t.arg(1).arg(1), negate(T("happy(david)")));
  EXPECT_TRUE(t.is_ground());
  EXPECT_EQ(T(t.str().c_str()), t);
}

TEST(Term, VariablesAndWildcards) {
  Term x = T("f(X, _)");
  EXPECT_FALSE(x.is_ground());
  EXPECT_TRUE(x.has_named_vars());
  EXPECT_TRUE(x.arg(1).is_wildcard());
  EXPECT_FALSE(T("f(_, a)").has_named_vars());
  // Each wildcard is a distinct variable, yet equality ignores the identity.
  Term a = T("_"), b = T("_");
  EXPECT_NE(a.var_id(), b.var_id());
  EXPECT_EQ(a, b);
}

TEST(Term, ParseErrors) {
  EXPECT_THROW(T("f(a"), ParseError);
  EXPECT_THROW(T(""), ParseError);
  EXPECT_THROW(T("f(a))"), ParseError);
  EXPECT_THROW(T("a ->"), ParseError);
}

TEST(Term, ParseErrorCarriesPosition) {
  try {
    parse_term("f(a,,b)", 3, 5);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_GE(e.column, 5);
  }
}

TEST(Term, Contrary) {
  EXPECT_EQ(contrary(T("p")), T("not(p)"));
  EXPECT_EQ(contrary(T("not(p)")), T("p"));
  EXPECT_EQ(contrary(contrary(T("q(a)"))), T("q(a)"));
}

TEST(Unify, BindsVariables) {
  auto s = unify(T("f(X, b)"), T("f(a, Y)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(T("g(X, Y)")), T("g(a, b)"));
}

TEST(Unify, FailsOnClash) {
  EXPECT_FALSE(unify(T("f(a)"), T("f(b)")));
  EXPECT_FALSE(unify(T("f(a)"), T("g(a)")));
  EXPECT_FALSE(unify(T("f(a, b)"), T("f(a)")));
}

TEST(Unify, OccursCheck) {
  EXPECT_FALSE(unify(T("X"), T("f(X)")));
  EXPECT_FALSE(unify(T("f(X, X)"), T("f(Y, g(Y))")));
}

TEST(Unify, SharedVariableChains) {
  auto s = unify(T("f(X, Y, Y)"), T("f(Y, Z, a)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->apply(T("X")), T("a"));
  EXPECT_EQ(s->apply(T("Z")), T("a"));
}

TEST(Unify, WildcardsAreIndependent) {
  Term rule_head = T("deleted(_, subdirectory)");
  EXPECT_TRUE(unify(rule_head, T("deleted(system, subdirectory)")));
  // Two wildcards never constrain each other.
  EXPECT_TRUE(unify(T("f(_, _)"), T("f(a, b)")));
  // A single named variable does.
  EXPECT_FALSE(unify(T("f(X, X)"), T("f(a, b)")));
}

TEST(Substitution, BindRejectsCycles) {
  Substitution s;
  EXPECT_TRUE(s.bind(Term::var("X"), T("f(Y)")));
  EXPECT_FALSE(s.bind(Term::var("Y"), T("g(X)")));
  EXPECT_EQ(s.size(), 1u);
}

TEST(Substitution, BindingsAreStable) {
  auto s = unify(T("f(Y, X)"), T("f(b, a)"));
  ASSERT_TRUE(s);
  auto b = s->bindings();
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].first, "X");
  EXPECT_EQ(b[1].first, "Y");
}
