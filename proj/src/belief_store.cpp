#include "implicate/belief_store.hpp"

#include <algorithm>

#include "implicate/error.hpp"

namespace implicate {

const char* to_string(AttitudeKind k) { return k == AttitudeKind::bel ? "bel" : "goal"; }

const char* to_string(Evidence::Source s) {
  switch (s) {
    case Evidence::Source::explicit_member: return "explicit";
    case Evidence::Source::derived: return "derived";
    case Evidence::Source::conflicting_goal: return "conflicting-goal";
  }
  return "?";
}

AttitudePath AttitudePath::bel(const Agent& a) const {
  AttitudePath p = *this;
  p.steps_.push_back({AttitudeKind::bel, a});
  return p;
}

AttitudePath AttitudePath::goal(const Agent& a) const {
  AttitudePath p = *this;
  p.steps_.push_back({AttitudeKind::goal, a});
  return p;
}

AttitudePath AttitudePath::parent() const {
  AttitudePath p = *this;
  if (!p.steps_.empty()) p.steps_.pop_back();
  return p;
}

bool AttitudePath::is_prefix_of(const AttitudePath& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

Term AttitudePath::wrap(const Term& content) const {
  Term t = content;
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it)
    t = Term::compound(to_string(it->kind), {Term::atom(it->agent.name), t});
  return t;
}

std::string AttitudePath::str() const {
  std::string out;
  for (const Attitude& a : steps_) out += std::string("[") + to_string(a.kind) + " " + a.agent.name + "]";
  return out;
}

namespace {

bool mentions_goal(const Term& t) {
  if (t.is("goal", 2)) return true;
  return std::any_of(t.args().begin(), t.args().end(), mentions_goal);
}

}  // namespace

bool storable(const Term& t) {
  if (t.has_named_vars()) return false;
  return t.is_ground() || t.is_rule();
}

std::pair<AttitudePath, Term> place(const AttitudePath& base, const Term& t, std::size_t max_depth) {
  std::vector<Attitude> steps = base.steps();
  if (base.ends_with_goal()) throw MalformedAttitude("cannot nest below a goal: " + base.wrap(t).str());
  Term cur = t;
  while (cur.is_attitude()) {
    const Term& who = cur.arg(0);
    if (!who.is_atom()) throw MalformedAttitude("attitude holder must be an agent name in " + t.str());
    bool is_goal = cur.name() == "goal";
    steps.push_back({is_goal ? AttitudeKind::goal : AttitudeKind::bel, Agent{who.name()}});
    cur = cur.arg(1);
    if (is_goal) {
      if (mentions_goal(cur)) throw MalformedAttitude("goals may not embed further goals: " + base.wrap(t).str());
      break;
    }
  }
  if (steps.empty()) throw MalformedAttitude("expected an attitude, got " + t.str());
  if (steps.front().agent != kSystem)
    throw MalformedAttitude("stored attitudes must be rooted at the system: " + base.wrap(t).str());
  if (steps.size() > max_depth)
    throw MalformedAttitude("nesting depth " + std::to_string(steps.size()) + " exceeds the maximum of " +
                            std::to_string(max_depth) + ": " + base.wrap(t).str());
  if (!storable(cur))
    throw MalformedAttitude("non-ground proposition (only rules may keep wildcards): " + cur.str());
  return {AttitudePath(std::move(steps)), cur};
}

std::pair<AttitudePath, Term> decompose(const Term& nested, std::size_t max_depth) {
  if (!nested.is_attitude())
    throw MalformedAttitude("expected bel(system, ...) or goal(system, ...), got " + nested.str());
  return place(AttitudePath{}, nested, max_depth);
}

AttitudePath viewpoint(const Agent& a) {
  return a == kSystem ? AttitudePath::root() : AttitudePath::root().bel(a);
}

bool Closure::contradictory() const {
  return std::any_of(terms.begin(), terms.end(), [&](const Term& t) { return terms.count(contrary(t)) > 0; });
}

Closure close(const std::set<Term>& env) {
  Closure c{env, {}};
  std::set<Term> delta = env;
  while (!delta.empty()) {
    std::set<Term> next;
    for (const Term& rule : c.terms) {
      if (!rule.is_rule()) continue;
      for (const Term& fact : c.terms) {
        if (!delta.count(rule) && !delta.count(fact)) continue;
        auto s = unify(rule.arg(0), fact);
        if (!s) continue;
        Term inst = s->apply(rule.arg(1));
        if (!storable(inst)) continue;
        if (c.terms.count(inst) || next.count(inst)) continue;
        next.insert(inst);
        c.derived.emplace(inst, Derivation{rule, fact});
      }
    }
    c.terms.insert(next.begin(), next.end());
    delta = std::move(next);
  }
  return c;
}

void BeliefStore::validate_path(const AttitudePath& path) const {
  if (path.empty()) throw MalformedAttitude("empty attitude path");
  if (path.steps().front().agent != kSystem)
    throw MalformedAttitude("attitude path must start at the system: " + path.str());
  for (std::size_t i = 0; i + 1 < path.depth(); ++i)
    if (path.steps()[i].kind == AttitudeKind::goal)
      throw MalformedAttitude("only the innermost attitude may be a goal: " + path.str());
  if (path.depth() > max_depth_)
    throw MalformedAttitude("nesting depth " + std::to_string(path.depth()) + " exceeds the maximum of " +
                            std::to_string(max_depth_) + ": " + path.str());
}

BeliefStore BeliefStore::assert_attitude(const Term& nested) const {
  auto [path, content] = decompose(nested, max_depth_);
  return insert(path, content);
}

BeliefStore BeliefStore::insert(const AttitudePath& path, const Term& content) const {
  validate_path(path);
  if (!storable(content))
    throw MalformedAttitude("non-ground proposition (only rules may keep wildcards): " + content.str());
  if (path.ends_with_goal() && mentions_goal(content))
    throw MalformedAttitude("goals may not embed further goals: " + path.wrap(content).str());
  const std::set<Term>& env = environment_at(path);
  if (env.count(content)) return *this;
  std::set<Term> next = env;
  next.insert(content);
  if (close(next).contradictory())
    throw Inconsistent("asserting " + path.wrap(content).str() + " would make " + path.str() + " inconsistent");
  BeliefStore out = *this;
  out.envs_[path] = std::move(next);
  return out;
}

bool BeliefStore::holds(const AttitudePath& path, const Term& q) const {
  const auto& env = environment_at(path);
  return std::any_of(env.begin(), env.end(), [&](const Term& t) { return unify(q, t).has_value(); });
}

bool BeliefStore::contains(const AttitudePath& path, const Term& t) const {
  return environment_at(path).count(t) > 0;
}

std::set<Term> BeliefStore::closure(const AttitudePath& path) const { return close(environment_at(path)).terms; }

Closure BeliefStore::closure_detail(const AttitudePath& path) const { return close(environment_at(path)); }

std::optional<Evidence> BeliefStore::contrary_evidence(const AttitudePath& path, const Term& p) const {
  const auto& env = environment_at(path);
  if (env.empty()) return std::nullopt;
  Term c = contrary(p);
  if (env.count(c)) return Evidence{Evidence::Source::explicit_member, c, std::nullopt, std::nullopt};
  Closure cl = close(env);
  auto it = cl.derived.find(c);
  if (it == cl.derived.end()) return std::nullopt;
  return Evidence{Evidence::Source::derived, c, it->second.rule, it->second.fact};
}

const std::set<Term>& BeliefStore::environment_at(const AttitudePath& path) const {
  static const std::set<Term> kEmpty;
  auto it = envs_.find(path);
  return it == envs_.end() ? kEmpty : it->second;
}

std::vector<AttitudePath> BeliefStore::paths() const {
  std::vector<AttitudePath> out;
  for (const auto& [p, env] : envs_)
    if (!env.empty()) out.push_back(p);
  return out;
}

std::vector<Term> BeliefStore::attitudes() const {
  std::vector<std::pair<std::string, Term>> keyed;
  for (const auto& [p, env] : envs_)
    for (const Term& t : env) {
      Term full = p.wrap(t);
      keyed.emplace_back(full.str(), full);
    }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(keyed.size());
  for (auto& [s, t] : keyed) out.push_back(std::move(t));
  return out;
}

std::vector<std::string> BeliefStore::render() const {
  std::vector<std::string> out;
  for (const auto& [p, env] : envs_)
    for (const Term& t : env) out.push_back(p.wrap(t).str());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t BeliefStore::size() const {
  std::size_t n = 0;
  for (const auto& [p, env] : envs_) n += env.size();
  return n;
}

}  // namespace implicate
