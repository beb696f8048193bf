#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "implicate/error.hpp"
#include "implicate/scenario.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify utterances in dialogue scenarios by nested belief ascription"};
  app.require_subcommand(1);

  std::string file;
  bool trace = false;
  std::string format = "text";
  std::size_t max_depth = implicate::kDefaultMaxDepth;
  std::size_t plan_bound = 6;

  CLI::App* run = app.add_subcommand("run", "Run a .prg scenario and check its expectations");
  run->add_option("file", file, "Scenario file")->required();
  run->add_flag("--trace", trace, "Print the full per-turn trace");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--max-depth", max_depth, "Maximum attitude nesting")->check(CLI::Range(1, 64));
  run->add_option("--plan-bound", plan_bound, "Maximum recognized plan length")->check(CLI::Range(1, 32));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << file << ": cannot open\n";
    return kExitInvalid;
  }
  std::ostringstream text;
  text << in.rdbuf();

  implicate::Scenario sc = [&] {
    try {
      return implicate::parse_scenario(text.str(), max_depth);
    } catch (const implicate::ScenarioError& e) {
      std::cerr << file << (e.line > 0 ? ":" : ": ") << e.what() << "\n";
      std::exit(kExitInvalid);
    }
  }();

  implicate::Report report;
  try {
    report = implicate::run_scenario(sc, {max_depth, plan_bound}, std::filesystem::path(file).filename().string());
  } catch (const implicate::Error& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kExitFail;
  }

  if (format == "json")
    std::cout << implicate::render_json(report) << "\n";
  else
    std::cout << implicate::render_text(report, trace);
  return report.all_passed() ? 0 : kExitFail;
}
