#include "implicate/ascription.hpp"

#include "implicate/error.hpp"

namespace implicate {

const char* to_string(AscriptionResult::Outcome o) {
  return o == AscriptionResult::Outcome::ascribed ? "ascribed" : "blocked";
}

namespace {

// A new member can clash with the environment without its own contrary being
// present, e.g. when it fires a rule whose conclusion is already contradicted.
Evidence clash_witness(const std::set<Term>& env, const Term& p) {
  std::set<Term> next = env;
  next.insert(p);
  Closure before = close(env);
  Closure after = close(next);
  for (const Term& q : after.terms) {
    if (before.contains(q)) continue;
    Term c = contrary(q);
    if (!after.contains(c)) continue;
    auto it = before.derived.find(c);
    if (it != before.derived.end()) return {Evidence::Source::derived, c, it->second.rule, it->second.fact};
    return {Evidence::Source::explicit_member, c, std::nullopt, std::nullopt};
  }
  return {Evidence::Source::derived, contrary(p), std::nullopt, std::nullopt};
}

}  // namespace

std::pair<BeliefStore, AscriptionResult> default_ascribe(const BeliefStore& store, const AttitudePath& path,
                                                         const Term& p) {
  store.validate_path(path);
  if (auto ev = store.contrary_evidence(path, p))
    return {store, {AscriptionResult::Outcome::blocked, path, p, std::move(ev)}};
  try {
    BeliefStore next = store.insert(path, p);
    return {std::move(next), {AscriptionResult::Outcome::ascribed, path, p, std::nullopt}};
  } catch (const Inconsistent&) {
    return {store, {AscriptionResult::Outcome::blocked, path, p, clash_witness(store.environment_at(path), p)}};
  }
}

std::pair<BeliefStore, AscriptionResult> default_ascribe(const BeliefStore& store, const Term& nested) {
  auto [path, content] = decompose(nested, store.max_depth());
  return default_ascribe(store, path, content);
}

std::optional<Substitution> match_trigger(const Stereotype& st, const Term& event) {
  return unify(st.trigger, event);
}

Term rooted_at_system(const Term& schema) {
  if (schema.is_attitude() && schema.arg(0) == Term::atom(kSystem.name)) return schema;
  return Term::compound("bel", {Term::atom(kSystem.name), schema});
}

std::pair<BeliefStore, std::vector<AscriptionResult>> stereotypical_ascribe(const BeliefStore& store,
                                                                            const Stereotype& st,
                                                                            const Substitution& bindings) {
  BeliefStore cur = store;
  std::vector<AscriptionResult> results;
  for (const Term& schema : st.attitudes) {
    Term inst = substitute(schema, bindings);
    if (inst.has_named_vars())
      throw UnboundSchema("stereotype " + st.name + ": unbound variable in " + inst.str());
    auto [next, res] = default_ascribe(cur, rooted_at_system(inst));
    cur = std::move(next);
    results.push_back(std::move(res));
  }
  return {std::move(cur), std::move(results)};
}

}  // namespace implicate
