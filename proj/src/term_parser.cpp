#include <cctype>

#include "implicate/error.hpp"
#include "implicate/term.hpp"

namespace implicate {
namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class TermParser {
 public:
  TermParser(std::string_view text, int line, int column) : text_(text), line_(line), col_(column) {}

  Term parse_all() {
    Term t = parse_term();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "' after term");
    return t;
  }

 private:
  // term := primary ( "->" term )?
  Term parse_term() {
    Term lhs = parse_primary();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      advance(2);
      Term rhs = parse_term();
      return implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected a term");
    char c = text_[pos_];
    if (c == '(') {
      advance(1);
      Term t = parse_term();
      expect(')');
      return t;
    }
    if (!ident_char(c)) fail("expected a term, found '" + std::string(1, c) + "'");
    int start_col = col_;
    std::string name = read_ident();
    if (name == "_") return Term::wildcard();
    if (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_') {
      skip_ws();
      if (peek() == '(') fail("variable " + name + " cannot be used as a functor");
      return Term::var(std::move(name));
    }
    skip_ws();
    if (peek() != '(') return Term::atom(std::move(name));
    advance(1);
    std::vector<Term> args;
    skip_ws();
    if (peek() == ')') fail(name + "() needs at least one argument");
    for (;;) {
      args.push_back(parse_term());
      skip_ws();
      if (peek() == ',') {
        advance(1);
        continue;
      }
      expect(')');
      break;
    }
    check_reserved(name, args.size(), start_col);
    return Term::compound(std::move(name), std::move(args));
  }

  void check_reserved(const std::string& name, std::size_t n, int col) {
    std::size_t want = 0;
    if (name == "bel" || name == "goal" || name == "implies") want = 2;
    if (name == "not") want = 1;
    if (want != 0 && n != want)
      throw ParseError(name + " takes " + std::to_string(want) + " argument(s), got " + std::to_string(n),
                       line_, col);
  }

  std::string read_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) advance(1);
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance(1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

}  // namespace

Term parse_term(std::string_view text, int line, int column) {
  return TermParser(text, line, column).parse_all();
}

}  // namespace implicate
