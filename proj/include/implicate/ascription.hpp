#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "implicate/belief_store.hpp"

namespace implicate {

struct AscriptionResult {
  enum class Outcome { ascribed, blocked };

  Outcome outcome;
  AttitudePath target_path;
  Term term;
  std::optional<Evidence> evidence;

  bool blocked() const { return outcome == Outcome::blocked; }
  /// The attitude as a full nested term, e.g. bel(system, bel(david, p)).
  Term attitude() const { return target_path.wrap(term); }
};

const char* to_string(AscriptionResult::Outcome o);

/// Attitudes assumed of anyone matching `trigger`. Attitude schemas are
/// written from the System's point of view without the outer
/// bel(system, ...): `bel(S, P)` lands in [bel system][bel S]. A schema
/// already rooted at bel(system, ...) or goal(system, ...) is used as is.
struct Stereotype {
  std::string name;
  Term trigger;
  std::vector<Term> attitudes;

  friend bool operator==(const Stereotype&, const Stereotype&) = default;
};

/// Inserts p at path unless contrary evidence (explicit or by closure) exists
/// there, in which case the store is returned unchanged with the witness.
std::pair<BeliefStore, AscriptionResult> default_ascribe(const BeliefStore& store, const AttitudePath& path,
                                                         const Term& p);

/// Same, for a full nested attitude term.
std::pair<BeliefStore, AscriptionResult> default_ascribe(const BeliefStore& store, const Term& nested);

/// Bindings for the stereotype if `event` matches its trigger.
std::optional<Substitution> match_trigger(const Stereotype& st, const Term& event);

/// Instantiates each schema and default-ascribes it, in listed order, against
/// the store as updated by the previous ones. Throws UnboundSchema.
std::pair<BeliefStore, std::vector<AscriptionResult>> stereotypical_ascribe(const BeliefStore& store,
                                                                            const Stereotype& st,
                                                                            const Substitution& bindings);

/// The full attitude a stereotype schema denotes once instantiated.
Term rooted_at_system(const Term& schema);

}  // namespace implicate
