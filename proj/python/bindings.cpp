#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "implicate/error.hpp"
#include "implicate/scenario.hpp"

namespace py = pybind11;
using namespace implicate;

namespace {

std::vector<std::string> rendered(const std::vector<AscriptionResult>& rs) {
  std::vector<std::string> out;
  for (const AscriptionResult& r : rs) out.push_back(r.attitude().str());
  return out;
}

std::vector<std::string> rendered(const std::vector<Term>& ts) {
  std::vector<std::string> out;
  for (const Term& t : ts) out.push_back(t.str());
  return out;
}

py::dict classify_py(const std::vector<std::string>& attitudes, const std::string& act_text,
                     const std::vector<std::string>& goalset, const std::vector<std::string>& reliable,
                     std::size_t max_depth, std::size_t plan_bound) {
  BeliefStore store(max_depth);
  for (const std::string& a : attitudes) store = store.assert_attitude(parse_term(a));
  DialogueAct act = DialogueAct::from_term(parse_term(act_text));

  PlanningContext ctx;
  ctx.bound = plan_bound;
  ctx.agents = {kSystem, act.speaker, act.hearer};
  ctx.reliability.set(kSystem);
  for (const std::string& a : reliable) {
    ctx.agents.insert(Agent{a});
    ctx.reliability.set(Agent{a});
  }
  std::vector<Term> goals;
  for (const std::string& g : goalset) goals.push_back(parse_term(g));

  Classification c = classify(store, act, goals, ctx);
  py::dict out;
  out["verdict"] = to_string(c.verdict);
  out["conditions"] = rendered(c.conditions);
  out["blocked"] = rendered(c.blocked);
  out["derived"] = rendered(c.derived);
  out["plan"] = c.plan ? py::cast(c.plan->render()) : py::none();
  out["divergence"] = c.divergence ? py::cast(to_string(*c.divergence)) : py::none();
  out["store"] = (c.interpreted ? *c.interpreted : c.hearer_store).render();
  return out;
}

}  // namespace

PYBIND11_MODULE(_implicate, m) {
  m.doc() = "Belief ascription and utterance classification";

  auto error = py::register_exception<Error>(m, "Error");
  auto scenario_error = py::register_exception<ScenarioError>(m, "ScenarioError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", scenario_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", scenario_error.ptr());

  m.def(
      "normalize_term", [](const std::string& s) { return parse_term(s).str(); },
      "Parse a term and render it canonically.");
  m.def(
      "contrary", [](const std::string& s) { return contrary(parse_term(s)).str(); }, "Single-negation contrary.");
  m.def(
      "unify",
      [](const std::string& a, const std::string& b) -> py::object {
        auto s = unify(parse_term(a), parse_term(b));
        if (!s) return py::none();
        py::dict out;
        for (const auto& [name, value] : s->bindings()) out[py::str(name)] = value.str();
        return std::move(out);
      },
      "Most general unifier as {variable: term}, or None.");

  m.def("classify", &classify_py, py::arg("attitudes"), py::arg("act"), py::arg("goalset") = std::vector<std::string>{},
        py::arg("reliable") = std::vector<std::string>{}, py::arg("max_depth") = kDefaultMaxDepth,
        py::arg("plan_bound") = 6, "Classify one act against a store given as nested attitude strings.");

  m.def(
      "canonical_scenario",
      [](const std::string& text, std::size_t max_depth) { return render_scenario(parse_scenario(text, max_depth)); },
      py::arg("text"), py::arg("max_depth") = kDefaultMaxDepth, "Parse and re-render a .prg scenario.");

  m.def(
      "run_json",
      [](const std::string& text, std::size_t max_depth, std::size_t plan_bound, const std::string& name) {
        Report r = run_scenario(parse_scenario(text, max_depth), {max_depth, plan_bound}, name);
        return render_json(r);
      },
      py::arg("text"), py::arg("max_depth") = kDefaultMaxDepth, py::arg("plan_bound") = 6, py::arg("name") = "",
      "Run a .prg scenario and return its JSON trace.");

  m.def(
      "run_text",
      [](const std::string& text, bool trace, std::size_t max_depth, std::size_t plan_bound) {
        Report r = run_scenario(parse_scenario(text, max_depth), {max_depth, plan_bound});
        return render_text(r, trace);
      },
      py::arg("text"), py::arg("trace") = false, py::arg("max_depth") = kDefaultMaxDepth, py::arg("plan_bound") = 6);
}
