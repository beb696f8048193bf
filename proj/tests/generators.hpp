#pragma once

// Seeded random inputs shared by the property, oracle and acceptance tests.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "implicate/planner.hpp"
#include "implicate/term.hpp"

namespace gen {

using implicate::GroundAction;
using implicate::Term;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng_); }
  bool coin(int percent = 50) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(static_cast<int>(v.size())))];
  }

 private:
  std::mt19937_64 eng_;
};

inline Term atom(const std::string& s) { return Term::atom(s); }

inline Term fact_atom(int i) { return atom("f" + std::to_string(i)); }

// Arbitrary term over a small signature; variables are X, Y and `_`.
inline Term any_term(Rng& r, int depth, bool vars = true) {
  static const std::vector<std::string> atoms{"a", "b", "c"};
  static const std::vector<std::string> names{"X", "Y"};
  int roll = r.below(depth <= 0 ? 2 : 4);
  if (roll == 0) return atom(r.pick(atoms));
  if (roll == 1) {
    if (!vars) return atom(r.pick(atoms));
    return r.coin(20) ? Term::wildcard() : Term::var(r.pick(names));
  }
  static const std::vector<std::string> functors{"f", "g"};
  std::vector<Term> args;
  int n = 1 + r.below(2);
  for (int i = 0; i < n; ++i) args.push_back(any_term(r, depth - 1, vars));
  return Term::compound(r.pick(functors), std::move(args));
}

// Ground literal with at most one leading not.
inline Term literal(Rng& r, int facts) {
  Term f = fact_atom(r.below(facts));
  return r.coin(30) ? implicate::negate(f) : f;
}

// A fact over unary predicates so rules with wildcards have something to match.
inline Term closure_fact(Rng& r) {
  static const std::vector<std::string> preds{"p", "q", "s"};
  static const std::vector<std::string> consts{"a", "b"};
  Term f = Term::compound(r.pick(preds), {atom(r.pick(consts))});
  return r.coin(25) ? implicate::negate(f) : f;
}

inline Term closure_rule(Rng& r) {
  static const std::vector<std::string> preds{"p", "q", "s", "t"};
  static const std::vector<std::string> consts{"a", "b"};
  Term arg = r.coin(50) ? Term::wildcard() : atom(r.pick(consts));
  Term head = Term::compound(r.pick(preds), {arg});
  Term body = Term::compound(r.pick(preds), {r.coin(50) ? atom(r.pick(consts)) : atom("a")});
  if (r.coin(25)) body = implicate::negate(body);
  return implicate::implies(head, body);
}

inline std::set<Term> closure_env(Rng& r) {
  std::set<Term> env;
  int nf = r.below(7);
  int nr = r.below(4);
  for (int i = 0; i < nf; ++i) env.insert(closure_fact(r));
  for (int i = 0; i < nr; ++i) env.insert(closure_rule(r));
  return env;
}

struct ToyDomain {
  std::set<Term> initial;
  std::vector<Term> goals;
  std::vector<GroundAction> actions;
};

// At most four operators over at most six facts.
inline ToyDomain toy_domain(Rng& r) {
  ToyDomain d;
  const int facts = 2 + r.below(5);
  for (int i = 0; i < facts; ++i)
    if (r.coin(35)) d.initial.insert(fact_atom(i));
  const int ops = 1 + r.below(4);
  for (int k = 0; k < ops; ++k) {
    GroundAction a{"op" + std::to_string(k), {}, {}, {}, false};
    std::set<Term> pre;
    for (int i = r.below(3); i > 0; --i) pre.insert(literal(r, facts));
    std::set<Term> add;
    for (int i = 1 + r.below(2); i > 0; --i) {
      Term t = literal(r, facts);
      if (!add.count(implicate::contrary(t))) add.insert(t);
    }
    for (const Term& t : add) pre.erase(t);
    a.pre.assign(pre.begin(), pre.end());
    a.add.assign(add.begin(), add.end());
    d.actions.push_back(std::move(a));
  }
  std::set<Term> goals;
  for (int i = 1 + r.below(2); i > 0; --i) goals.insert(fact_atom(r.below(facts)));
  d.goals.assign(goals.begin(), goals.end());
  return d;
}

}  // namespace gen
