#include <algorithm>
#include <cctype>
#include <sstream>

#include "implicate/error.hpp"
#include "implicate/scenario.hpp"

namespace implicate {

const char* to_string(Expectation::Kind k) {
  switch (k) {
    case Expectation::Kind::verdict: return "verdict";
    case Expectation::Kind::holds: return "holds";
    case Expectation::Kind::not_holds: return "not_holds";
    case Expectation::Kind::plan_contains: return "plan_contains";
    case Expectation::Kind::blocked: return "blocked";
  }
  return "?";
}

OperatorLibrary Scenario::library() const {
  OperatorLibrary lib = OperatorLibrary::builtin();
  for (const PlanOperator& op : operators) lib.add(op);
  return lib;
}

namespace {

// A slice of one source line that remembers where it starts.
struct Span {
  std::string_view text;
  int line;
  int column;  // 1-based column of text[0]

  Span trimmed() const {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return {text.substr(b, e - b), line, column + static_cast<int>(b)};
  }
  Span sub(std::size_t pos, std::size_t n = std::string_view::npos) const {
    return {text.substr(pos, n), line, column + static_cast<int>(pos)};
  }
  bool empty() const { return text.empty(); }

  // Splits off the first whitespace-delimited word.
  std::pair<Span, Span> word() const {
    Span t = trimmed();
    std::size_t i = 0;
    while (i < t.text.size() && !std::isspace(static_cast<unsigned char>(t.text[i]))) ++i;
    return {t.sub(0, i), t.sub(i).trimmed()};
  }

  std::vector<Span> split(char sep) const {
    std::vector<Span> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == sep) {
        out.push_back(sub(start, i - start).trimmed());
        start = i + 1;
      }
    }
    return out;
  }
};

[[noreturn]] void invalid(const Span& at, const std::string& msg) { throw ValidationError(msg, at.line, at.column); }
[[noreturn]] void syntax(const Span& at, const std::string& msg) { throw ParseError(msg, at.line, at.column); }

Term term_of(const Span& s) {
  Span t = s.trimmed();
  if (t.empty()) syntax(t, "expected a term");
  return parse_term(t.text, t.line, t.column);
}

std::vector<Term> terms_of(const Span& s) {
  std::vector<Term> out;
  if (s.trimmed().empty()) return out;
  for (const Span& part : s.split(';')) out.push_back(term_of(part));
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Position of `keyword` as a standalone word, or npos.
std::size_t find_keyword(std::string_view text, std::string_view keyword) {
  for (std::size_t pos = text.find(keyword); pos != std::string_view::npos; pos = text.find(keyword, pos + 1)) {
    bool starts = pos == 0 || std::isspace(static_cast<unsigned char>(text[pos - 1])) || text[pos - 1] == ')';
    if (starts) return pos;
  }
  return std::string_view::npos;
}

class Parser {
 public:
  explicit Parser(std::size_t max_depth) : max_depth_(max_depth) {}

  Scenario run(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::vector<std::string> storage;
    while (std::getline(in, raw)) storage.push_back(raw);
    for (const std::string& l : storage) {
      ++line_no;
      std::string_view view(l);
      if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
      Span s = Span{view, line_no, 1}.trimmed();
      if (!s.empty()) directive(s);
    }
    finish();
    return std::move(sc_);
  }

 private:
  void directive(const Span& s) {
    auto [head, rest] = s.word();
    const std::string_view d = head.text;
    if (d == "agent") agent(rest);
    else if (d == "common") pending_common_.emplace_back(term_of(rest), rest);
    else if (d == "stereotype") stereotype(rest);
    else if (d == "op") op(rest);
    else if (d == "believe") pending_believe_.emplace_back(term_of(rest), rest);
    else if (d == "goalset") pending_goals_.emplace_back(term_of(rest), rest);
    else if (d == "turn") pending_turns_.emplace_back(term_of(rest), rest);
    else if (d == "expect") expect(rest);
    else syntax(head, "unknown directive '" + std::string(d) + "'");
  }

  void agent(const Span& rest) {
    auto [name, more] = rest.word();
    if (!is_identifier(name.text)) syntax(name, "expected an agent name");
    Agent a{std::string(name.text)};
    if (std::find(sc_.agents.begin(), sc_.agents.end(), a) != sc_.agents.end())
      invalid(name, "agent " + a.name + " declared twice");
    sc_.agents.push_back(a);
    if (more.empty()) return;
    auto [flag, tags] = more.word();
    if (flag.text != "reliable") syntax(flag, "expected 'reliable'");
    std::set<std::string> topics;
    if (!tags.empty()) {
      auto [on, list] = tags.word();
      if (on.text != "on") syntax(on, "expected 'on' before reliability topics");
      for (const Span& t : list.split(',')) {
        if (!is_identifier(t.text)) syntax(t, "expected a topic name");
        topics.insert(std::string(t.text));
      }
    }
    sc_.reliability.set(a, std::move(topics));
  }

  void stereotype(const Span& rest) {
    auto [name, more] = rest.word();
    if (!is_identifier(name.text)) syntax(name, "expected a stereotype name");
    auto [on, body] = more.word();
    if (on.text != "on") syntax(on, "expected 'on'");
    std::size_t colon = body.text.find(':');
    if (colon == std::string_view::npos) syntax(body, "expected ':' after the trigger pattern");
    sc_.stereotypes.push_back({std::string(name.text), term_of(body.sub(0, colon)), terms_of(body.sub(colon + 1))});
    stereotype_spans_.push_back(body);
  }

  void op(const Span& rest) {
    std::size_t pre = find_keyword(rest.text, "pre:");
    if (pre == std::string_view::npos) syntax(rest, "expected 'pre:'");
    Term header = term_of(rest.sub(0, pre));
    if (!header.is_compound()) syntax(rest, "expected name(Params)");
    Span body = rest.sub(pre + 4);
    std::size_t add = find_keyword(body.text, "add:");
    PlanOperator o{header.name(), header.args(), {}, {}, false};
    if (add == std::string_view::npos) {
      o.preconditions = terms_of(body);
    } else {
      o.preconditions = terms_of(body.sub(0, add));
      o.adds = terms_of(body.sub(add + 4));
    }
    try {
      OperatorLibrary lib = sc_.library();
      lib.add(o);
    } catch (const Error& e) {
      invalid(rest, e.what());
    }
    sc_.operators.push_back(std::move(o));
  }

  void expect(const Span& rest) {
    auto [num, more] = rest.word();
    auto [kind, payload] = more.word();
    Expectation e{0, Expectation::Kind::verdict, "", std::nullopt, rest.line};
    if (num.empty() || !std::all_of(num.text.begin(), num.text.end(), [](char c) { return std::isdigit(c); }))
      syntax(num, "expected a turn number");
    e.after_turn = std::stoul(std::string(num.text));
    if (payload.empty()) syntax(payload, "expected a payload");
    const std::string_view k = kind.text;
    if (k == "verdict") {
      e.kind = Expectation::Kind::verdict;
      e.payload = std::string(payload.text);
      if (!parse_verdict(e.payload)) invalid(payload, "unknown verdict '" + e.payload + "'");
    } else if (k == "plan_contains") {
      e.kind = Expectation::Kind::plan_contains;
      e.payload = std::string(payload.text);
      if (!is_identifier(e.payload)) syntax(payload, "expected an operator name");
    } else if (k == "holds" || k == "not_holds" || k == "blocked") {
      e.kind = k == "holds" ? Expectation::Kind::holds
                            : k == "not_holds" ? Expectation::Kind::not_holds : Expectation::Kind::blocked;
      e.term = term_of(payload);
      e.payload = e.term->str();
      if (!e.term->is_attitude()) invalid(payload, "expected an attitude rooted at the system");
      check_agents(*e.term, payload, false);
      try {
        decompose(*e.term, max_depth_);
      } catch (const Error& err) {
        invalid(payload, err.what());
      }
    } else {
      syntax(kind, "unknown expectation kind '" + std::string(k) + "'");
    }
    sc_.expectations.push_back(std::move(e));
    expect_spans_.push_back(num);
  }

  void check_agents(const Term& t, const Span& at, bool allow_vars) {
    if (t.is_attitude()) {
      const Term& who = t.arg(0);
      if (who.is_atom()) {
        if (!declared(who.name())) invalid(at, "undeclared agent " + who.name());
      } else if (!(allow_vars && who.is_var())) {
        invalid(at, "attitude holder must be an agent name in " + t.str());
      }
    }
    for (const Term& a : t.args()) check_agents(a, at, allow_vars);
  }

  // The system is always present, declared or not.
  bool declared(const std::string& name) const {
    return name == kSystem.name || std::find(sc_.agents.begin(), sc_.agents.end(), Agent{name}) != sc_.agents.end();
  }

  void finish() {
    if (sc_.agents.empty()) throw ValidationError("no agents declared");
    if (std::find(sc_.agents.begin(), sc_.agents.end(), kSystem) == sc_.agents.end()) {
      sc_.agents.insert(sc_.agents.begin(), kSystem);
      sc_.reliability.set(kSystem);
    }
    for (std::size_t i = 0; i < sc_.stereotypes.size(); ++i)
      for (const Term& t : sc_.stereotypes[i].attitudes) check_agents(t, stereotype_spans_[i], true);

    BeliefStore store(max_depth_);
    for (const auto& [t, at] : pending_believe_) {
      check_agents(t, at, false);
      try {
        store = store.assert_attitude(t);
      } catch (const Error& e) {
        invalid(at, e.what());
      }
      sc_.initial.push_back(t);
    }
    for (const auto& [t, at] : pending_common_) {
      check_agents(t, at, false);
      if (!storable(t) || t.has_named_vars()) invalid(at, "common attitudes must be ground or a rule");
      sc_.common.push_back(t);
    }
    for (const auto& [t, at] : pending_goals_) {
      check_agents(t, at, true);
      if (!t.is("goal", 2)) invalid(at, "goalset entries are written goal(Agent, Content)");
      sc_.goalset.push_back(t);
    }
    const OperatorLibrary lib = sc_.library();
    for (const auto& [t, at] : pending_turns_) {
      std::optional<DialogueAct> parsed;
      try {
        parsed = DialogueAct::from_term(t);
        lib.act_operator(*parsed);
      } catch (const Error& e) {
        invalid(at, e.what());
      }
      DialogueAct& act = *parsed;
      for (const Agent& a : {act.speaker, act.hearer})
        if (!declared(a.name)) invalid(at, "undeclared agent " + a.name);
      if (act.speaker != kSystem && act.hearer != kSystem)
        invalid(at, "the system must be the speaker or the hearer of every turn");
      check_agents(act.proposition, at, false);
      sc_.turns.push_back(std::move(act));
    }
    for (std::size_t i = 0; i < sc_.expectations.size(); ++i) {
      const Expectation& e = sc_.expectations[i];
      if (e.after_turn < 1 || e.after_turn > sc_.turns.size())
        invalid(expect_spans_[i], "expectation refers to turn " + std::to_string(e.after_turn) + " but there are " +
                                      std::to_string(sc_.turns.size()) + " turn(s)");
    }
  }

  std::size_t max_depth_;
  Scenario sc_;
  std::vector<std::pair<Term, Span>> pending_common_, pending_believe_, pending_goals_, pending_turns_;
  std::vector<Span> stereotype_spans_;
  std::vector<Span> expect_spans_;
};

std::string join(const std::vector<Term>& ts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) out += (i ? sep : "") + ts[i].str();
  return out;
}

}  // namespace

Scenario parse_scenario(const std::string& text, std::size_t max_depth) { return Parser(max_depth).run(text); }

std::string render_scenario(const Scenario& s) {
  std::ostringstream out;
  for (const Agent& a : s.agents) {
    out << "agent " << a.name;
    auto it = s.reliability.table().find(a);
    if (it != s.reliability.table().end()) {
      out << " reliable";
      if (!it->second.empty()) {
        out << " on ";
        bool first = true;
        for (const std::string& t : it->second) {
          out << (first ? "" : ", ") << t;
          first = false;
        }
      }
    }
    out << "\n";
  }
  for (const Term& t : s.common) out << "common " << t.str() << "\n";
  for (const Stereotype& st : s.stereotypes)
    out << "stereotype " << st.name << " on " << st.trigger.str() << ": " << join(st.attitudes, "; ") << "\n";
  for (const PlanOperator& op : s.operators) {
    out << "op " << op.name << "(" << join(op.params, ", ") << ") pre: " << join(op.preconditions, "; ");
    if (!op.adds.empty()) out << " add: " << join(op.adds, "; ");
    out << "\n";
  }
  for (const Term& t : s.initial) out << "believe " << t.str() << "\n";
  for (const Term& t : s.goalset) out << "goalset " << t.str() << "\n";
  for (const DialogueAct& a : s.turns) out << "turn " << a.term().str() << "\n";
  for (const Expectation& e : s.expectations)
    out << "expect " << e.after_turn << " " << to_string(e.kind) << " " << e.payload << "\n";
  return out.str();
}

}  // namespace implicate
