#include <algorithm>

#include "implicate/error.hpp"
#include "implicate/planner.hpp"

namespace implicate {

std::string topic(const Term& proposition) {
  const Term* t = &proposition;
  while (t->is_negation()) t = &t->arg(0);
  return t->is_var() ? "_" : t->name();
}

bool Reliability::reliable(const Agent& a, const Term& proposition) const {
  auto it = table_.find(a);
  if (it == table_.end()) return false;
  return it->second.empty() || it->second.count(topic(proposition)) > 0;
}

std::set<Term> flatten_viewpoint(const BeliefStore& store, const Agent& self) {
  const AttitudePath base = viewpoint(self);
  const AttitudePath own_goals = AttitudePath::root().goal(self);
  std::set<Term> out;
  for (const AttitudePath& p : store.paths()) {
    if (base.is_prefix_of(p)) {
      AttitudePath rel(std::vector<Attitude>(p.steps().begin() + static_cast<long>(base.depth()), p.steps().end()));
      for (const Term& t : store.environment_at(p)) out.insert(rel.wrap(t));
    }
  }
  if (self != kSystem)
    for (const Term& t : store.environment_at(own_goals))
      out.insert(Term::compound("goal", {Term::atom(self.name), t}));
  return out;
}

std::set<Term> reduce_context(const std::set<Term>& state, const Agent& self, const Reliability& r) {
  std::set<Term> out;
  for (const Term& t : state) {
    bool accepted = false;
    if (!t.is_attitude()) {
      for (const Term& u : state) {
        if (!u.is("bel", 2) || !u.arg(0).is_atom() || u.arg(0).name() == self.name) continue;
        if (u.arg(1) == t && r.reliable(Agent{u.arg(0).name()}, t)) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) out.insert(t);
  }
  return out;
}

namespace {

void collect_subterms(const Term& t, std::vector<Term>& rules, std::vector<Term>& facts) {
  if (t.is_rule()) {
    if (std::find(rules.begin(), rules.end(), t) == rules.end()) rules.push_back(t);
  } else if (t.is_ground() && std::find(facts.begin(), facts.end(), t) == facts.end()) {
    facts.push_back(t);
  }
  for (const Term& a : t.args()) collect_subterms(a, rules, facts);
}

// Extends s so that every precondition matches some universe term.
void match_all(const std::vector<Term>& pre, std::size_t i, const Substitution& s, const std::vector<Term>& universe,
               std::vector<Substitution>& out) {
  if (i == pre.size()) {
    out.push_back(s);
    return;
  }
  Term p = s.apply(pre[i]);
  if (p.is_ground()) {
    match_all(pre, i + 1, s, universe, out);
    return;
  }
  for (const Term& u : universe)
    if (auto next = unify(p, u, s)) match_all(pre, i + 1, *next, universe, out);
}

}  // namespace

PragmaticDomain::PragmaticDomain(Agent self, std::optional<Agent> hearer, const std::set<Term>& universe,
                                 const PlanningContext& ctx, std::size_t max_depth)
    : self_(std::move(self)), hearer_(std::move(hearer)), ctx_(ctx), max_depth_(max_depth) {
  for (const Term& t : universe) {
    collect_subterms(t, rules_, facts_);
    universe_.push_back(t);
  }
}

Term PragmaticDomain::level(const Agent& a, const Term& t) const {
  return a == self_ ? t : Term::compound("bel", {Term::atom(a.name), t});
}

bool PragmaticDomain::admissible(const Term& relative) const {
  std::string prev = self_.name;
  for (const Term* t = &relative; t->is_attitude(); t = &t->arg(1)) {
    if (!t->arg(0).is_atom() || t->arg(0).name() == prev) return false;
    if (t->name() == "goal") break;
    prev = t->arg(0).name();
  }
  try {
    place(viewpoint(self_), relative, max_depth_);
  } catch (const MalformedAttitude&) {
    return false;
  }
  return true;
}

GroundAction PragmaticDomain::make(std::string name, std::vector<Term> args, std::vector<Term> pre, Term add) const {
  bool late = hearer_ && *hearer_ != self_ && add.is("bel", 2) && add.arg(0) == Term::atom(hearer_->name);
  return GroundAction{std::move(name), std::move(args), std::move(pre), {std::move(add)}, late};
}

std::vector<GroundAction> PragmaticDomain::achievers(const Term& c) const {
  std::vector<GroundAction> out;
  auto offer = [&](GroundAction a) {
    for (const Term& t : a.pre)
      if (!admissible(t)) return;
    for (const Term& t : a.add)
      if (!admissible(t)) return;
    out.push_back(std::move(a));
  };
  const Term self_atom = Term::atom(self_.name);

  Agent holder = self_;
  Term content = c;
  bool attitude_of_other = c.is("bel", 2) && c.arg(0).is_atom() && c.arg(0).name() != self_.name;
  if (attitude_of_other) {
    holder = Agent{c.arg(0).name()};
    content = c.arg(1);
  }
  const Term holder_atom = Term::atom(holder.name);

  if (!c.is("goal", 2) && !content.is("goal", 2) && storable(content)) {
    for (const Agent& source : ctx_.agents) {
      if (source == holder || !ctx_.reliability.reliable(source, content)) continue;
      Term told = Term::compound("bel", {Term::atom(source.name), content});
      offer(make("accept_belief", {holder_atom, told}, {level(holder, told)}, c));
    }
    // Only general knowledge (rules) is passed on by default ascription;
    // particular facts travel by telling or inference.
    if (attitude_of_other && content.is_rule())
      offer(make("ascribe", {self_atom, holder_atom, content}, {content}, c));
    if (attitude_of_other && content.is("bel", 2) && content.arg(0).is_atom() &&
        content.arg(0).name() != holder.name && content.arg(1).is_rule())
      offer(make("ascribe", {holder_atom, content.arg(0), content.arg(1)}, {level(holder, content.arg(1))}, c));
    for (const Term& rule : rules_) {
      if (!unify(rule.arg(1), content)) continue;
      for (const Term& fact : facts_) {
        if (fact.is_rule() || !unify(rule.arg(0), fact)) continue;
        offer(make("modus_ponens", {holder_atom, rule, fact, content}, {level(holder, rule), level(holder, fact)}, c));
      }
    }
  }

  for (const PlanOperator* op : ctx_.ops.operators()) {
    if (op->builtin || op->adds.empty()) continue;
    for (const Term& schema : op->adds) {
      auto s = unify(schema, c);
      if (!s) continue;
      std::vector<Substitution> matches;
      match_all(op->preconditions, 0, *s, universe_, matches);
      for (const Substitution& m : matches) {
        GroundAction a{op->name, {}, {}, {}, false};
        bool ground = true;
        for (const Term& p : op->params) {
          a.args.push_back(m.apply(p));
          ground = ground && a.args.back().is_ground();
        }
        for (const Term& p : op->preconditions) a.pre.push_back(m.apply(p));
        for (const Term& t : op->adds) {
          a.add.push_back(m.apply(t));
          ground = ground && storable(a.add.back());
          if (hearer_ && *hearer_ != self_ && a.add.back().is("bel", 2) &&
              a.add.back().arg(0) == Term::atom(hearer_->name))
            a.after_seed = true;
        }
        if (ground) offer(std::move(a));
      }
    }
  }
  return out;
}

std::optional<Recognition> recognize(const BeliefStore& store, const DialogueAct& act,
                                     const std::vector<Term>& ascribable_goals, const PlanningContext& ctx,
                                     const std::vector<Term>& must_explain) {
  const Agent& self = act.speaker;
  std::set<Term> initial = reduce_context(flatten_viewpoint(store, self), self, ctx.reliability);

  GroundAction seed{act.name, {Term::atom(act.speaker.name), Term::atom(act.hearer.name), act.proposition},
                    must_explain, {}, false};
  for (const Term& cond : ctx.ops.conditions(act))
    seed.add.push_back(act.hearer == self ? cond : Term::compound("bel", {Term::atom(act.hearer.name), cond}));

  std::set<Term> universe = initial;
  universe.insert(seed.add.begin(), seed.add.end());
  universe.insert(must_explain.begin(), must_explain.end());
  PragmaticDomain domain(self, act.hearer, universe, ctx, store.max_depth());

  for (const Term& g : ascribable_goals) {
    if (!g.is("goal", 2) || g.arg(0) != Term::atom(self.name) || !storable(g.arg(1))) continue;
    if (auto p = plan(initial, {g.arg(1)}, domain, ctx.bound, {seed})) return Recognition{*p, g, initial, universe};
  }
  return std::nullopt;
}

std::string to_string(const Divergence& d) {
  if (d.kind == Divergence::Kind::direct) return "direct";
  return "divergent(" + std::to_string(d.extra_steps) + ")";
}

Divergence divergence(const Plan& recognized, const std::set<Term>& initial, const Term& goal,
                      const ActionProvider& provider, std::size_t bound) {
  std::optional<Plan> best = plan(initial, {goal}, provider, bound);
  if (!best || best->size() >= recognized.size()) return {Divergence::Kind::direct, 0, best};
  return {Divergence::Kind::divergent, recognized.size() - best->size(), best};
}

}  // namespace implicate
