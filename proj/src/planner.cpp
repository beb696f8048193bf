#include "implicate/planner.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace implicate {

std::string GroundAction::str() const {
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) out += (i ? ", " : "") + args[i].str();
  return out + ")";
}

namespace {

bool action_less(const GroundAction& a, const GroundAction& b) {
  if (a.name != b.name) return a.name < b.name;
  return a.str() < b.str();
}

bool adds(const GroundAction& a, const Term& c) { return std::find(a.add.begin(), a.add.end(), c) != a.add.end(); }

}  // namespace

std::vector<GroundAction> StripsDomain::achievers(const Term& condition) const {
  std::vector<GroundAction> out;
  for (const GroundAction& a : actions_)
    if (adds(a, condition)) out.push_back(a);
  return out;
}

std::string step_label(int id) {
  if (id == kInitStep) return "init";
  if (id == kGoalStep) return "goal";
  return std::to_string(id);
}

bool Plan::contains_step(const std::string& op) const {
  return std::any_of(steps.begin(), steps.end(), [&](const PlanStep& s) { return s.action.name == op; });
}

const PlanStep& Plan::step(int id) const { return steps.at(static_cast<std::size_t>(id - 1)); }

std::vector<std::string> Plan::render() const {
  std::vector<std::string> out;
  for (const PlanStep& s : steps) out.push_back("step " + std::to_string(s.id) + ": " + s.action.str());
  for (const CausalLink& l : links)
    out.push_back("link " + step_label(l.producer) + " --" + l.condition.str() + "--> " + step_label(l.consumer));
  for (const auto& [a, b] : ordering) out.push_back("order " + step_label(a) + " < " + step_label(b));
  for (const ResolvedThreat& t : threats)
    out.push_back("threat " + step_label(t.step) + " on " + step_label(t.link.producer) + " --" +
                  t.link.condition.str() + "--> " + step_label(t.link.consumer) + ": " +
                  (t.promoted ? "promoted" : "demoted"));
  for (const Block& b : blocks) out.push_back("blocks " + b.blocker.str() + " | " + b.blocked.str());
  return out;
}

std::set<Term> progress(const std::set<Term>& state, const GroundAction& a) {
  std::set<Term> next = state;
  for (const Term& t : a.add) next.erase(contrary(t));
  for (const Term& t : a.add) next.insert(t);
  return next;
}

namespace {

constexpr int kInit = 0;
constexpr int kGoal = 1;
constexpr std::size_t kMaxSteps = 60;
constexpr int kInfinite = std::numeric_limits<int>::max() / 2;

struct Link {
  int producer;
  Term condition;
  int consumer;
};

struct Threat {
  int step;
  std::size_t link;
  bool promoted;
};

// Steps 0 and 1 are the initial-state and goal dummies.
struct Node {
  std::vector<GroundAction> acts;
  std::vector<std::uint64_t> after;  // bit j of after[i]: i precedes j
  std::vector<Link> links;
  std::vector<std::pair<Term, int>> agenda;
  std::vector<std::pair<int, int>> orders;
  std::vector<Threat> threats;

  std::size_t real_steps() const { return acts.size() - 2; }
  bool precedes(int a, int b) const { return (after[a] >> b) & 1u; }

  bool order(int a, int b) {
    if (a == b || precedes(b, a)) return false;
    if (precedes(a, b)) return true;
    const std::uint64_t gain = (std::uint64_t{1} << b) | after[b];
    for (std::size_t x = 0; x < acts.size(); ++x)
      if (static_cast<int>(x) == a || precedes(static_cast<int>(x), a)) after[x] |= gain;
    orders.emplace_back(a, b);
    return true;
  }

  int add_step(const GroundAction& a) {
    int id = static_cast<int>(acts.size());
    acts.push_back(a);
    after.push_back(0);
    order(kInit, id);
    order(id, kGoal);
    for (const Term& p : a.pre) agenda.emplace_back(p, id);
    return id;
  }
};

class Search {
 public:
  Search(const std::set<Term>& initial, const ActionProvider& provider, std::size_t seeds)
      : initial_(initial), provider_(provider), seeds_(seeds) {}

  const std::vector<GroundAction>& achievers(const Term& c) {
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
    std::vector<GroundAction> found = provider_.achievers(c);
    std::sort(found.begin(), found.end(), action_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return cache_.emplace(c, std::move(found)).first->second;
  }

  // Every action that could matter for the given conditions. Pruning is
  // switched off when the set is too large to enumerate.
  void collect_relevant(const std::vector<Term>& roots) {
    std::set<Term> seen;
    std::vector<Term> todo(roots.begin(), roots.end());
    while (!todo.empty()) {
      Term c = todo.back();
      todo.pop_back();
      if (!seen.insert(c).second) continue;
      if (seen.size() > 4000) {
        prune_ = false;
        relevant_.clear();
        return;
      }
      for (const GroundAction& a : achievers(c)) {
        if (std::find(relevant_.begin(), relevant_.end(), a) == relevant_.end()) relevant_.push_back(a);
        for (const Term& p : a.pre) todo.push_back(p);
      }
    }
  }

  std::optional<Node> run(Node n, std::size_t limit) {
    limit_ = limit;
    return refine(std::move(n));
  }

 private:
  std::optional<std::pair<int, std::size_t>> find_threat(const Node& n) const {
    for (std::size_t li = 0; li < n.links.size(); ++li) {
      const Link& l = n.links[li];
      Term neg = contrary(l.condition);
      for (std::size_t s = 2; s < n.acts.size(); ++s) {
        int si = static_cast<int>(s);
        if (si == l.producer || si == l.consumer) continue;
        if (!adds(n.acts[s], neg)) continue;
        if (n.precedes(si, l.producer) || n.precedes(l.consumer, si)) continue;
        return std::pair{si, li};
      }
    }
    return std::nullopt;
  }

  // Relaxed (delete-free) cost of each open condition from the initial state
  // plus everything existing steps add; a lower bound on new steps needed.
  bool hopeless(const Node& n) const {
    if (!prune_) return false;
    std::map<Term, int> cost;
    for (const Term& t : initial_) cost[t] = 0;
    for (std::size_t s = 2; s < n.acts.size(); ++s)
      for (const Term& t : n.acts[s].add) cost[t] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (const GroundAction& a : relevant_) {
        int c = 0;
        for (const Term& p : a.pre) {
          auto it = cost.find(p);
          c = std::max(c, it == cost.end() ? kInfinite : it->second);
        }
        if (c >= kInfinite) continue;
        for (const Term& t : a.add) {
          auto it = cost.find(t);
          if (it == cost.end() || it->second > c + 1) {
            cost[t] = c + 1;
            changed = true;
          }
        }
      }
    }
    const int remaining = static_cast<int>(limit_ - n.real_steps());
    for (const auto& [c, consumer] : n.agenda) {
      auto it = cost.find(c);
      if (it == cost.end() || it->second > remaining) return true;
    }
    return false;
  }

  std::optional<Node> refine(Node n) {
    if (auto threat = find_threat(n)) {
      auto [s, li] = *threat;
      const Link& l = n.links[li];
      Node demoted = n;
      if (demoted.order(s, l.producer)) {
        demoted.threats.push_back({s, li, false});
        if (auto r = refine(std::move(demoted))) return r;
      }
      Node promoted = n;
      if (promoted.order(l.consumer, s)) {
        promoted.threats.push_back({s, li, true});
        if (auto r = refine(std::move(promoted))) return r;
      }
      return std::nullopt;
    }
    if (n.agenda.empty()) return n;
    if (hopeless(n)) return std::nullopt;

    auto [c, consumer] = n.agenda.front();
    n.agenda.erase(n.agenda.begin());

    for (std::size_t i = 0; i < n.acts.size(); ++i) {
      int pi = static_cast<int>(i);
      if (pi == consumer || pi == kGoal) continue;
      bool supplies = pi == kInit ? initial_.count(c) > 0 : adds(n.acts[i], c);
      if (!supplies || n.precedes(consumer, pi)) continue;
      Node next = n;
      if (!next.order(pi, consumer)) continue;
      next.links.push_back({pi, c, consumer});
      if (auto r = refine(std::move(next))) return r;
    }

    if (n.real_steps() >= limit_) return std::nullopt;
    for (const GroundAction& a : achievers(c)) {
      Node next = n;
      int id = next.add_step(a);
      bool ok = next.order(id, consumer);
      if (a.after_seed)
        for (std::size_t s = 0; s < seeds_ && ok; ++s) ok = next.order(static_cast<int>(2 + s), id);
      if (!ok) continue;
      next.links.push_back({id, c, consumer});
      if (auto r = refine(std::move(next))) return r;
    }
    return std::nullopt;
  }

  const std::set<Term>& initial_;
  const ActionProvider& provider_;
  std::size_t seeds_;
  std::size_t limit_ = 0;
  bool prune_ = true;
  std::map<Term, std::vector<GroundAction>> cache_;
  std::vector<GroundAction> relevant_;
};

Plan extract(const Node& n) {
  // Kahn's algorithm, lowest insertion index first.
  const int count = static_cast<int>(n.acts.size());
  std::vector<int> order;
  std::vector<bool> placed(count, false);
  for (int round = 2; round < count; ++round) {
    for (int i = 2; i < count; ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (int j = 2; j < count && ready; ++j)
        if (!placed[j] && j != i && n.precedes(j, i)) ready = false;
      if (ready) {
        placed[i] = true;
        order.push_back(i);
        break;
      }
    }
  }
  std::vector<int> id(count, 0);
  id[kInit] = kInitStep;
  id[kGoal] = kGoalStep;
  Plan p;
  for (std::size_t k = 0; k < order.size(); ++k) {
    id[order[k]] = static_cast<int>(k + 1);
    p.steps.push_back({static_cast<int>(k + 1), n.acts[order[k]]});
  }
  for (const Link& l : n.links) p.links.push_back({id[l.producer], l.condition, id[l.consumer]});
  std::sort(p.links.begin(), p.links.end(), [](const CausalLink& a, const CausalLink& b) {
    auto key = [](int s) { return s == kGoalStep ? std::numeric_limits<int>::max() : s; };
    if (key(a.consumer) != key(b.consumer)) return key(a.consumer) < key(b.consumer);
    if (a.producer != b.producer) return a.producer < b.producer;
    return a.condition < b.condition;
  });
  for (const auto& [a, b] : n.orders)
    if (a >= 2 && b >= 2) p.ordering.emplace(id[a], id[b]);
  for (const Threat& t : n.threats) {
    const Link& l = n.links[t.link];
    p.threats.push_back({id[t.step], {id[l.producer], l.condition, id[l.consumer]}, t.promoted});
  }
  return p;
}

}  // namespace

std::optional<Plan> plan(const std::set<Term>& initial, const std::vector<Term>& goals,
                         const ActionProvider& provider, std::size_t bound,
                         const std::vector<GroundAction>& seeds) {
  bound = std::min(bound, kMaxSteps);
  if (seeds.size() > bound) return std::nullopt;
  Node root;
  root.acts = {GroundAction{"init", {}, {}, {}, false}, GroundAction{"goal", {}, goals, {}, false}};
  root.after = {0, 0};
  root.order(kInit, kGoal);
  for (const Term& g : goals) root.agenda.emplace_back(g, kGoal);
  for (const GroundAction& s : seeds) root.add_step(s);

  Search search(initial, provider, seeds.size());
  std::vector<Term> roots = goals;
  for (const GroundAction& s : seeds) roots.insert(roots.end(), s.pre.begin(), s.pre.end());
  search.collect_relevant(roots);
  for (std::size_t limit = seeds.size(); limit <= bound; ++limit)
    if (auto found = search.run(root, limit)) return extract(*found);
  return std::nullopt;
}

bool every_linearization_valid(const Plan& p, const std::set<Term>& initial, const std::vector<Term>& goals) {
  const std::size_t n = p.steps.size();
  std::vector<std::vector<bool>> before(n + 1, std::vector<bool>(n + 1, false));
  auto constrain = [&](int a, int b) {
    if (a >= 1 && b >= 1) before[a][b] = true;
  };
  for (const auto& [a, b] : p.ordering) constrain(a, b);
  for (const CausalLink& l : p.links) constrain(l.producer, l.consumer);

  std::vector<int> seq;
  std::vector<bool> used(n + 1, false);
  bool ok = true;
  std::function<void()> walk = [&]() {
    if (!ok) return;
    if (seq.size() == n) {
      std::set<Term> state = initial;
      for (int id : seq) {
        const GroundAction& a = p.step(id).action;
        for (const Term& pre : a.pre)
          if (!state.count(pre)) ok = false;
        state = progress(state, a);
      }
      for (const Term& g : goals)
        if (!state.count(g)) ok = false;
      return;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      if (used[i]) continue;
      bool ready = true;
      for (std::size_t j = 1; j <= n; ++j)
        if (!used[j] && before[j][i]) ready = false;
      if (!ready) continue;
      used[i] = true;
      seq.push_back(static_cast<int>(i));
      walk();
      seq.pop_back();
      used[i] = false;
    }
  };
  walk();
  return ok;
}

}  // namespace implicate
