#include "implicate/term.hpp"

#include <atomic>
#include <sstream>

#include "implicate/error.hpp"

namespace implicate {

struct Term::Node {
  TermKind kind;
  std::string name;
  std::uint64_t id = 0;
  std::vector<Term> args;
  bool ground = true;
  bool named_vars = false;
};

namespace {

std::atomic<std::uint64_t> next_wildcard_id{1};

void render(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case TermKind::atom:
    case TermKind::var:
      os << t.name();
      return;
    case TermKind::compound:
      break;
  }
  if (t.is_rule()) {
    const Term& lhs = t.arg(0);
    if (lhs.is_rule()) {
      os << '(';
      render(os, lhs);
      os << ')';
    } else {
      render(os, lhs);
    }
    os << " -> ";
    render(os, t.arg(1));
    return;
  }
  os << t.name() << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) os << ", ";
    render(os, t.arg(i));
  }
  os << ')';
}

bool occurs(const Term& var, const Term& t) {
  if (t.is_var()) return t.name() == var.name() && t.var_id() == var.var_id();
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

Term replace(const Term& t, const Term& var, const Term& value) {
  if (t.is_ground()) return t;
  if (t.is_var()) return (t.name() == var.name() && t.var_id() == var.var_id()) ? value : t;
  if (!t.is_compound()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(replace(a, var, value));
  return Term::compound(t.name(), std::move(args));
}

bool unify_into(const Term& a0, const Term& b0, Substitution& s) {
  const Term* ra = a0.is_var() ? s.find(a0) : nullptr;
  const Term* rb = b0.is_var() ? s.find(b0) : nullptr;
  const Term& a = ra ? *ra : a0;
  const Term& b = rb ? *rb : b0;
  if (a.is_var() && b.is_var() && a.name() == b.name() && a.var_id() == b.var_id()) return true;
  if (a.is_var()) return s.bind(a, b);
  if (b.is_var()) return s.bind(b, a);
  if (a.kind() != b.kind() || a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!unify_into(a.arg(i), b.arg(i), s)) return false;
  return true;
}

}  // namespace

Term Term::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::atom;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::var;
  n->name = std::move(name);
  n->ground = false;
  n->named_vars = true;
  return Term(std::move(n));
}

Term Term::wildcard() {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::var;
  n->name = "_";
  n->id = next_wildcard_id.fetch_add(1, std::memory_order_relaxed);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (functor.empty()) throw Error("compound term with empty functor");
  if (args.empty()) throw Error("compound term " + functor + " must have at least one argument");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::compound;
  n->name = std::move(functor);
  for (const Term& a : args) {
    n->ground = n->ground && a.is_ground();
    n->named_vars = n->named_vars || a.has_named_vars();
  }
  n->args = std::move(args);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
bool Term::is_wildcard() const { return node_->kind == TermKind::var && node_->id != 0; }
const std::string& Term::name() const { return node_->name; }
std::size_t Term::arity() const { return node_->args.size(); }
const std::vector<Term>& Term::args() const { return node_->args; }
std::uint64_t Term::var_id() const { return node_->id; }
bool Term::is_ground() const { return node_->ground; }
bool Term::has_named_vars() const { return node_->named_vars; }

bool Term::is(std::string_view functor, std::size_t n) const {
  return node_->kind == TermKind::compound && node_->args.size() == n && node_->name == functor;
}

std::string Term::str() const {
  std::ostringstream os;
  render(os, *this);
  return os.str();
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == std::strong_ordering::equal; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  render(os, t);
  return os;
}

Term negate(Term p) { return Term::compound("not", {std::move(p)}); }

Term implies(Term antecedent, Term consequent) {
  return Term::compound("implies", {std::move(antecedent), std::move(consequent)});
}

Term contrary(const Term& t) { return t.is_negation() ? t.arg(0) : negate(t); }

const Term* Substitution::find(const Term& var) const {
  auto it = map_.find(key_of(var));
  return it == map_.end() ? nullptr : &it->second;
}

bool Substitution::bind(const Term& var_in, const Term& value) {
  // Either argument may alias one of our own bindings, which the loop below rewrites.
  const Term var = var_in;
  Term v = apply(value);
  if (v.is_var() && v.name() == var.name() && v.var_id() == var.var_id()) return true;
  if (occurs(var, v)) return false;
  for (auto& [k, bound] : map_) bound = replace(bound, var, v);
  map_.insert_or_assign(key_of(var), std::move(v));
  return true;
}

Term Substitution::apply(const Term& t) const {
  if (t.is_ground() || map_.empty()) return t;
  if (t.is_var()) {
    const Term* b = find(t);
    return b ? *b : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(apply(a));
  return Term::compound(t.name(), std::move(args));
}

std::vector<std::pair<std::string, Term>> Substitution::bindings() const {
  std::vector<std::pair<std::string, Term>> out;
  out.reserve(map_.size());
  for (const auto& [k, v] : map_) out.emplace_back(k.name, v);
  return out;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s) {
  Substitution out = s;
  if (!unify_into(a, b, out)) return std::nullopt;
  return out;
}

Term substitute(const Term& t, const Substitution& s) { return s.apply(t); }

}  // namespace implicate
