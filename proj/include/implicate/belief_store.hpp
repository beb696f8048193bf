#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "implicate/term.hpp"

namespace implicate {

inline constexpr std::size_t kDefaultMaxDepth = 6;

struct Agent {
  std::string name;
  auto operator<=>(const Agent&) const = default;
};

inline const Agent kSystem{"system"};

enum class AttitudeKind { bel, goal };

const char* to_string(AttitudeKind k);

struct Attitude {
  AttitudeKind kind;
  Agent agent;
  auto operator<=>(const Attitude&) const = default;
};

/// A nesting prefix such as [bel system][bel simon][goal system].
class AttitudePath {
 public:
  AttitudePath() = default;
  AttitudePath(std::initializer_list<Attitude> steps) : steps_(steps) {}
  explicit AttitudePath(std::vector<Attitude> steps) : steps_(std::move(steps)) {}

  /// [bel system], the root every stored attitude hangs from.
  static AttitudePath root() { return AttitudePath{{AttitudeKind::bel, kSystem}}; }

  AttitudePath bel(const Agent& a) const;
  AttitudePath goal(const Agent& a) const;
  AttitudePath parent() const;

  std::size_t depth() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const std::vector<Attitude>& steps() const { return steps_; }
  const Attitude& back() const { return steps_.back(); }
  bool ends_with_goal() const { return !steps_.empty() && steps_.back().kind == AttitudeKind::goal; }
  bool is_prefix_of(const AttitudePath& other) const;

  /// Wraps content in the path's attitudes: [bel system][bel simon] + p gives
  /// bel(system, bel(simon, p)).
  Term wrap(const Term& content) const;

  std::string str() const;

  auto operator<=>(const AttitudePath&) const = default;

 private:
  std::vector<Attitude> steps_;
};

/// Splits a nested attitude term rooted at bel(system, ...) or
/// goal(system, ...) into its path and innermost proposition. Descends
/// through bel(...) and stops at the first goal(...), whose content is kept
/// whole. Throws MalformedAttitude.
std::pair<AttitudePath, Term> decompose(const Term& nested, std::size_t max_depth = kDefaultMaxDepth);

/// Like decompose, but descends `t` below an existing path: placing
/// goal(david, bel(system, p)) under [bel system] gives
/// ([bel system][goal david], bel(system, p)).
std::pair<AttitudePath, Term> place(const AttitudePath& base, const Term& t,
                                    std::size_t max_depth = kDefaultMaxDepth);

/// Where the System keeps an agent's point of view: [bel system] for the
/// System itself, [bel system][bel a] for anyone else.
AttitudePath viewpoint(const Agent& a);

/// Term forms a path's content may take: ground, or a rule stored verbatim.
bool storable(const Term& t);

struct Derivation {
  Term rule;
  Term fact;
};

/// Modus-ponens fixpoint of one environment.
struct Closure {
  std::set<Term> terms;
  /// First derivation found for every term that is not an explicit member.
  std::map<Term, Derivation> derived;

  bool contains(const Term& t) const { return terms.count(t) > 0; }
  /// True if some q and contrary(q) are both present.
  bool contradictory() const;
};

Closure close(const std::set<Term>& env);

struct Evidence {
  enum class Source { explicit_member, derived, conflicting_goal };
  Source source;
  Term witness;
  std::optional<Term> rule;
  std::optional<Term> fact;
};

const char* to_string(Evidence::Source s);

/// The System's nested attitudes. Immutable: every update returns a new store.
class BeliefStore {
 public:
  explicit BeliefStore(std::size_t max_depth = kDefaultMaxDepth) : max_depth_(max_depth) {}

  std::size_t max_depth() const { return max_depth_; }

  /// Stores the innermost proposition of `nested` under its derived path.
  [[nodiscard]] BeliefStore assert_attitude(const Term& nested) const;
  /// Stores `content` at `path`. Throws MalformedAttitude or Inconsistent.
  [[nodiscard]] BeliefStore insert(const AttitudePath& path, const Term& content) const;

  /// True iff q unifies with an explicit member at path.
  bool holds(const AttitudePath& path, const Term& q) const;
  bool contains(const AttitudePath& path, const Term& t) const;

  std::set<Term> closure(const AttitudePath& path) const;
  Closure closure_detail(const AttitudePath& path) const;

  std::optional<Evidence> contrary_evidence(const AttitudePath& path, const Term& p) const;

  /// Explicit members at path; empty for unknown paths.
  const std::set<Term>& environment_at(const AttitudePath& path) const;

  std::vector<AttitudePath> paths() const;
  /// Every stored attitude as a full nested term, sorted by rendering.
  std::vector<Term> attitudes() const;
  /// One rendered attitude per line, lexicographic.
  std::vector<std::string> render() const;

  std::size_t size() const;

  friend bool operator==(const BeliefStore& a, const BeliefStore& b) { return a.envs_ == b.envs_; }

  void validate_path(const AttitudePath& path) const;

 private:
  std::size_t max_depth_;
  std::map<AttitudePath, std::set<Term>> envs_;
};

}  // namespace implicate
