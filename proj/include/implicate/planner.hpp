#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "implicate/belief_store.hpp"
#include "implicate/dialogue_acts.hpp"
#include "implicate/term.hpp"

namespace implicate {

/// A fully instantiated operator. Adding t implicitly deletes contrary(t).
struct GroundAction {
  std::string name;
  std::vector<Term> args;
  std::vector<Term> pre;
  std::vector<Term> add;
  /// Must be ordered after every seeded step.
  bool after_seed = false;

  std::string str() const;
  friend bool operator==(const GroundAction&, const GroundAction&) = default;
};

/// Supplies the ground actions that could establish a condition.
class ActionProvider {
 public:
  virtual ~ActionProvider() = default;
  virtual std::vector<GroundAction> achievers(const Term& condition) const = 0;
};

/// A fixed list of ground actions.
class StripsDomain : public ActionProvider {
 public:
  explicit StripsDomain(std::vector<GroundAction> actions) : actions_(std::move(actions)) {}
  std::vector<GroundAction> achievers(const Term& condition) const override;
  const std::vector<GroundAction>& actions() const { return actions_; }

 private:
  std::vector<GroundAction> actions_;
};

inline constexpr int kInitStep = 0;
inline constexpr int kGoalStep = -1;

struct PlanStep {
  int id;
  GroundAction action;
};

struct CausalLink {
  int producer;
  Term condition;
  int consumer;
};

/// A step that could have undone a link, and how it was ordered away.
struct ResolvedThreat {
  int step;
  CausalLink link;
  bool promoted;  // ordered after the consumer; otherwise before the producer
};

/// An annotation that `blocker` prevents `blocked` from being ascribed.
struct Block {
  Term blocker;
  Term blocked;
};

struct Plan {
  /// Steps 1..n in a topological order; 0 is the initial state and -1 the goal.
  std::vector<PlanStep> steps;
  std::vector<CausalLink> links;
  std::set<std::pair<int, int>> ordering;
  std::vector<std::pair<Term, int>> open;
  std::vector<ResolvedThreat> threats;
  std::vector<Block> blocks;

  std::size_t size() const { return steps.size(); }
  bool complete() const { return open.empty(); }
  bool contains_step(const std::string& op) const;
  const PlanStep& step(int id) const;
  /// `step`, `link`, `order`, `threat` and `blocks` lines.
  std::vector<std::string> render() const;
};

std::string step_label(int id);

/// Shortest complete plan of at most `bound` steps that reaches every goal.
/// Seeds are placed in the plan up front and count towards the bound.
std::optional<Plan> plan(const std::set<Term>& initial, const std::vector<Term>& goals,
                         const ActionProvider& provider, std::size_t bound,
                         const std::vector<GroundAction>& seeds = {});

/// State after applying `a`: its adds are inserted and their contraries removed.
std::set<Term> progress(const std::set<Term>& state, const GroundAction& a);

/// Checks that every topological order of the plan executes from `initial`
/// and ends with all goals true.
bool every_linearization_valid(const Plan& p, const std::set<Term>& initial, const std::vector<Term>& goals);

// Plan recognition over nested viewpoints.

/// Who may be believed about what. Agents absent from the table are not
/// reliable; an empty tag set means reliable on every topic.
class Reliability {
 public:
  void set(const Agent& a, std::set<std::string> tags = {}) { table_[a] = std::move(tags); }
  void clear(const Agent& a) { table_.erase(a); }
  bool reliable(const Agent& a, const Term& proposition) const;
  bool reliable(const Agent& a) const { return table_.count(a) > 0; }
  const std::map<Agent, std::set<std::string>>& table() const { return table_; }

  friend bool operator==(const Reliability&, const Reliability&) = default;

 private:
  std::map<Agent, std::set<std::string>> table_;
};

/// Topic of a proposition: its predicate, looking through not(...).
std::string topic(const Term& proposition);

struct PlanningContext {
  std::set<Agent> agents;
  Reliability reliability;
  OperatorLibrary ops = OperatorLibrary::builtin();
  std::size_t bound = 6;
};

/// The speaker's world as the System models it, with attitudes written
/// relative to `self`: X for self's beliefs, bel(a, X) for self's beliefs
/// about a, goal(self, X) for self's goals.
std::set<Term> flatten_viewpoint(const BeliefStore& store, const Agent& self);

/// Drops self-level beliefs that a reliable agent is also believed to hold,
/// leaving them to be re-established by accept_belief steps.
std::set<Term> reduce_context(const std::set<Term>& state, const Agent& self, const Reliability& r);

/// Generates accept_belief, ascribe and modus_ponens steps, plus declared
/// operators with adds, inside one agent's frame.
class PragmaticDomain : public ActionProvider {
 public:
  PragmaticDomain(Agent self, std::optional<Agent> hearer, const std::set<Term>& universe,
                  const PlanningContext& ctx, std::size_t max_depth);
  std::vector<GroundAction> achievers(const Term& condition) const override;

 private:
  bool admissible(const Term& relative) const;
  GroundAction make(std::string name, std::vector<Term> args, std::vector<Term> pre, Term add) const;
  Term level(const Agent& a, const Term& t) const;

  Agent self_;
  std::optional<Agent> hearer_;
  const PlanningContext& ctx_;
  std::size_t max_depth_;
  std::vector<Term> rules_;
  std::vector<Term> facts_;
  std::vector<Term> universe_;
};

struct Recognition {
  Plan plan;
  Term matched_goal;
  std::set<Term> initial;
  /// Terms the domain drew rules and facts from.
  std::set<Term> universe;
};

/// Finds the first goal (in listed order) with a complete plan that embeds
/// the act. Goals are written goal(Speaker, X) and X is planned for in the
/// speaker's frame. `must_explain` terms become preconditions of the act.
std::optional<Recognition> recognize(const BeliefStore& store, const DialogueAct& act,
                                     const std::vector<Term>& ascribable_goals, const PlanningContext& ctx,
                                     const std::vector<Term>& must_explain = {});

struct Divergence {
  enum class Kind { direct, divergent };
  Kind kind;
  std::size_t extra_steps;
  std::optional<Plan> optimal;
};

std::string to_string(const Divergence& d);

/// Compares a recognized plan with the shortest plan to the same goal.
Divergence divergence(const Plan& recognized, const std::set<Term>& initial, const Term& goal,
                      const ActionProvider& provider, std::size_t bound);

}  // namespace implicate
