#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace implicate {

enum class TermKind { atom, var, compound };

/// Immutable first-order term: an atom, a variable, or a compound.
///
/// Terms share their nodes, so copies are cheap and a Term may be handed to
/// any number of threads. Variables come in two flavours: named schema
/// variables (uppercase-initial, identified by name) and the anonymous
/// wildcard `_`, which is a fresh variable at every occurrence. Equality and
/// ordering are structural and treat all wildcards as equal, so
/// `parse(render(t)) == t` holds even though each parse mints new wildcards.
class Term {
 public:
  static Term atom(std::string name);
  static Term var(std::string name);
  static Term wildcard();
  static Term compound(std::string functor, std::vector<Term> args);

  TermKind kind() const;
  bool is_atom() const { return kind() == TermKind::atom; }
  bool is_var() const { return kind() == TermKind::var; }
  bool is_compound() const { return kind() == TermKind::compound; }
  bool is_wildcard() const;

  /// Atom name, variable name ("_" for wildcards) or functor.
  const std::string& name() const;
  std::size_t arity() const;
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args().at(i); }

  /// Zero for named variables and non-variables.
  std::uint64_t var_id() const;

  bool is_ground() const;
  bool has_named_vars() const;

  bool is(std::string_view functor, std::size_t n) const;
  bool is_rule() const { return is("implies", 2); }
  bool is_negation() const { return is("not", 1); }
  bool is_attitude() const { return is("bel", 2) || is("goal", 2); }

  std::string str() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

Term negate(Term p);
Term implies(Term antecedent, Term consequent);

/// Single-negation contrariety: not(P) for bare P, P for not(P).
Term contrary(const Term& t);

/// Variable-to-term mapping kept fully resolved, so one application is final.
class Substitution {
 public:
  /// Binding for a variable term, or nullptr.
  const Term* find(const Term& var) const;

  /// Adds var -> value. Fails (leaving the substitution untouched) when the
  /// occurs-check rejects the binding.
  bool bind(const Term& var, const Term& value);

  Term apply(const Term& t) const;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  /// (variable name, value) pairs in a stable order, for display.
  std::vector<std::pair<std::string, Term>> bindings() const;

  friend bool operator==(const Substitution& a, const Substitution& b) = default;

 private:
  struct Key {
    std::string name;
    std::uint64_t id = 0;
    auto operator<=>(const Key&) const = default;
  };
  static Key key_of(const Term& var) { return {var.name(), var.var_id()}; }
  std::map<Key, Term> map_;
};

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s = {});
Term substitute(const Term& t, const Substitution& s);

/// Parses the surface syntax: lowercase atoms, functor(args...), uppercase
/// variables, `_`, and right-associative infix `->`. `line`/`column` offset
/// the positions reported in ParseError.
Term parse_term(std::string_view text, int line = 1, int column = 1);

}  // namespace implicate
