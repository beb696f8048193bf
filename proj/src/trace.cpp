#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "implicate/scenario.hpp"

namespace implicate {

namespace {

using nlohmann::ordered_json;

std::string evidence_text(const Evidence& e) {
  std::string out = std::string(to_string(e.source)) + " " + e.witness.str();
  if (e.rule && e.fact) out += " via " + e.rule->str() + " and " + e.fact->str();
  return out;
}

std::string result_text(const AscriptionResult& r) {
  std::string out = r.attitude().str() + ": " + to_string(r.outcome);
  if (r.blocked() && r.evidence) out += " (" + evidence_text(*r.evidence) + ")";
  return out;
}

std::string link_text(const CausalLink& l) {
  return step_label(l.producer) + " --" + l.condition.str() + "--> " + step_label(l.consumer);
}

// Deception keeps the plain communicative goal next to the nested one.
std::vector<std::string> notes(const TurnRecord& t) {
  std::vector<std::string> out;
  if (!t.classification || t.classification->verdict != Verdict::deception) return out;
  for (const AscriptionResult& c : t.classification->conditions)
    if (!c.blocked() && c.target_path.ends_with_goal())
      for (const AscriptionResult& d : t.deception_results)
        if (!d.blocked() && d.target_path == c.target_path)
          out.push_back("goal kept alongside its fraudulent counterpart: " + c.attitude().str() + " / " +
                        d.attitude().str());
  return out;
}

std::string expectation_head(const Expectation& e) {
  std::string out = "expect " + std::to_string(e.after_turn) + " " + to_string(e.kind);
  return out + " " + e.payload;
}

ordered_json evidence_json(const std::optional<Evidence>& e) {
  if (!e) return nullptr;
  ordered_json j;
  j["source"] = to_string(e->source);
  j["witness"] = e->witness.str();
  j["rule"] = e->rule ? ordered_json(e->rule->str()) : ordered_json(nullptr);
  j["fact"] = e->fact ? ordered_json(e->fact->str()) : ordered_json(nullptr);
  return j;
}

ordered_json result_json(const AscriptionResult& r) {
  ordered_json j;
  j["path"] = r.target_path.str();
  j["term"] = r.term.str();
  j["attitude"] = r.attitude().str();
  j["outcome"] = to_string(r.outcome);
  j["evidence"] = evidence_json(r.evidence);
  return j;
}

ordered_json results_json(const std::vector<AscriptionResult>& rs) {
  ordered_json a = ordered_json::array();
  for (const AscriptionResult& r : rs) a.push_back(result_json(r));
  return a;
}

ordered_json strings_json(const std::vector<std::string>& v) {
  ordered_json a = ordered_json::array();
  for (const std::string& s : v) a.push_back(s);
  return a;
}

ordered_json terms_json(const std::vector<Term>& v) {
  ordered_json a = ordered_json::array();
  for (const Term& t : v) a.push_back(t.str());
  return a;
}

ordered_json plan_json(const Plan& p) {
  ordered_json j;
  j["steps"] = ordered_json::array();
  for (const PlanStep& s : p.steps) {
    ordered_json step;
    step["id"] = s.id;
    step["operator"] = s.action.name;
    step["args"] = terms_json(s.action.args);
    step["label"] = s.action.str();
    j["steps"].push_back(step);
  }
  j["links"] = ordered_json::array();
  for (const CausalLink& l : p.links)
    j["links"].push_back({{"producer", step_label(l.producer)},
                          {"condition", l.condition.str()},
                          {"consumer", step_label(l.consumer)}});
  j["ordering"] = ordered_json::array();
  for (const auto& [a, b] : p.ordering) j["ordering"].push_back({step_label(a), step_label(b)});
  j["threats"] = ordered_json::array();
  for (const ResolvedThreat& t : p.threats)
    j["threats"].push_back({{"step", t.step}, {"link", link_text(t.link)}, {"resolution", t.promoted ? "promoted" : "demoted"}});
  j["blocks"] = ordered_json::array();
  for (const Block& b : p.blocks) j["blocks"].push_back({{"blocker", b.blocker.str()}, {"blocked", b.blocked.str()}});
  return j;
}

ordered_json turn_json(const TurnRecord& t) {
  ordered_json j;
  j["turn"] = t.index;
  j["act"] = t.act.term().str();
  const auto& c = t.classification;
  j["verdict"] = c ? ordered_json(to_string(c->verdict)) : ordered_json(nullptr);
  j["speaker_update"] = results_json(t.speaker_results);
  j["conditions"] = c ? results_json(c->conditions) : ordered_json::array();
  j["blocked"] = c ? results_json(c->blocked) : ordered_json::array();
  ordered_json chain = ordered_json::array();
  if (c && c->chain)
    for (const ChainEntry& e : c->chain->entries) chain.push_back({{"label", e.label}, {"term", e.attitude.str()}});
  j["chain"] = chain;
  j["derived"] = c ? terms_json(c->derived) : ordered_json::array();
  if (c && c->plan) {
    ordered_json plan = plan_json(*c->plan);
    plan["goal"] = c->matched_goal ? ordered_json(c->matched_goal->str()) : ordered_json(nullptr);
    plan["divergence"] = c->divergence ? ordered_json(to_string(*c->divergence)) : ordered_json(nullptr);
    plan["optimal_steps"] = c->divergence && c->divergence->optimal
                                ? ordered_json(c->divergence->optimal->size())
                                : ordered_json(nullptr);
    j["plan"] = plan;
  } else {
    j["plan"] = nullptr;
  }
  j["additional_goals"] = c ? terms_json(c->additional_goals) : ordered_json::array();
  j["deception_update"] = results_json(t.deception_results);
  if (t.acceptance) {
    j["acceptance"] = {{"outcome", to_string(*t.acceptance)}, {"evidence", evidence_json(t.acceptance_evidence)}};
  } else {
    j["acceptance"] = nullptr;
  }
  j["stereotypes"] = ordered_json::array();
  for (const StereotypeFiring& f : t.stereotypes)
    j["stereotypes"].push_back({{"name", f.name}, {"results", results_json(f.results)}});
  j["notes"] = strings_json(notes(t));
  j["store"] = strings_json(t.store.render());
  return j;
}

}  // namespace

std::string render_text(const Report& r, bool full) {
  std::ostringstream out;
  if (full) {
    if (!r.name.empty()) out << "scenario: " << r.name << "\n";
    for (const AscriptionResult& c : r.common_results) out << "common " << result_text(c) << "\n";
    out << "initial:\n";
    for (const std::string& line : r.initial.render()) out << "  " << line << "\n";
    for (const TurnRecord& t : r.turns) {
      out << "turn " << t.index << ": " << t.act.term().str() << "\n";
      for (const AscriptionResult& s : t.speaker_results) out << "  speaker " << result_text(s) << "\n";
      if (const auto& c = t.classification) {
        for (const AscriptionResult& a : c->conditions) out << "  condition " << result_text(a) << "\n";
        for (const AscriptionResult& b : c->blocked) {
          bool listed = std::any_of(c->conditions.begin(), c->conditions.end(),
                                    [&](const AscriptionResult& a) { return a.blocked() && a.attitude() == b.attitude(); });
          if (!listed) out << "  refused " << result_text(b) << "\n";
        }
        out << "  verdict: " << to_string(c->verdict) << "\n";
        if (c->chain)
          for (const ChainEntry& e : c->chain->entries) out << "  chain " << e.label << ": " << e.attitude.str() << "\n";
        for (const Term& d : c->derived) out << "  derived " << d.str() << "\n";
        if (c->plan) {
          if (c->matched_goal) out << "  plan for " << c->matched_goal->str() << "\n";
          for (const std::string& line : c->plan->render()) out << "    " << line << "\n";
        }
        if (c->divergence) out << "  divergence: " << to_string(*c->divergence) << "\n";
      }
      for (const AscriptionResult& d : t.deception_results) out << "  deception " << result_text(d) << "\n";
      if (t.acceptance) {
        out << "  accept_belief: " << to_string(*t.acceptance);
        if (t.acceptance_evidence) out << " (" << evidence_text(*t.acceptance_evidence) << ")";
        out << "\n";
      }
      for (const StereotypeFiring& f : t.stereotypes)
        for (const AscriptionResult& s : f.results) out << "  stereotype " << f.name << " " << result_text(s) << "\n";
      for (const std::string& n : notes(t)) out << "  note: " << n << "\n";
      out << "  store:\n";
      for (const std::string& line : t.store.render()) out << "    " << line << "\n";
    }
  }
  for (const ExpectationResult& e : r.expectations) {
    out << (e.passed ? "PASS " : "FAIL ") << expectation_head(e.expectation);
    if (!e.passed && !e.detail.empty()) out << ": " << e.detail;
    out << "\n";
  }
  out << r.passed() << "/" << r.expectations.size() << " expectations passed\n";
  return out.str();
}

std::string render_json(const Report& r, int indent) {
  ordered_json j;
  j["scenario"] = r.name;
  j["passed"] = r.all_passed();
  j["common"] = results_json(r.common_results);
  j["initial"] = strings_json(r.initial.render());
  j["turns"] = ordered_json::array();
  for (const TurnRecord& t : r.turns) j["turns"].push_back(turn_json(t));
  j["expectations"] = ordered_json::array();
  for (const ExpectationResult& e : r.expectations) {
    ordered_json x;
    x["turn"] = e.expectation.after_turn;
    x["kind"] = to_string(e.expectation.kind);
    x["payload"] = e.expectation.payload;
    x["term"] = e.expectation.term ? ordered_json(e.expectation.term->str()) : ordered_json(nullptr);
    x["line"] = e.expectation.line;
    x["passed"] = e.passed;
    x["detail"] = e.detail;
    j["expectations"].push_back(x);
  }
  return j.dump(indent);
}

}  // namespace implicate
