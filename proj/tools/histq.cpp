// Command-line front end: run scenario files, validate them, and exercise
// the built-in example scenarios against their embedded expected values.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "histq/io/serialize.hpp"
#include "histq/scenario/builtins.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLoadFailure = 1;  // parse/validation/file errors
constexpr int kExitQueryFailure = 2; // a query failed or an expectation missed

struct Options {
  std::string format = "table";
  double consistency_tol = histq::kConsistencyTol;
  double numeric_tol = histq::kDefaultNumericTol;
  bool quiet = false;
  std::string output_path;
};

bool color_enabled() {
  if (std::getenv("HISTQ_NO_COLOR") != nullptr) return false;
  return isatty(fileno(stdout)) != 0;
}

void emit(const Options& options, const std::string& payload) {
  if (options.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(options.output_path, std::ios::binary);
  if (!out) {
    throw histq::Error("cannot write output file: " + options.output_path);
  }
  out << payload;
}

std::string render(const Options& options, const histq::scenario::ResultSet& results) {
  if (options.format == "json") return histq::io::to_json(results);
  if (options.format == "csv") return histq::io::to_csv(results);
  return histq::io::to_table(results, options.output_path.empty() && color_enabled());
}

histq::scenario::ScenarioSource load_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw histq::Error("file not found: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return {buffer.str(), path};
}

int run_results(const Options& options, const histq::scenario::Scenario& scenario) {
  const auto results = histq::scenario::run_scenario(scenario);
  emit(options, render(options, results));
  for (const auto& r : results.results) {
    if (!r.ok()) {
      if (!options.quiet) std::cerr << r.id << " failed: " << r.error << "\n";
      return kExitQueryFailure;
    }
  }
  return kExitOk;
}

int cmd_run(const Options& options, const std::string& path) {
  histq::scenario::Scenario scenario;
  try {
    scenario = histq::scenario::parse_scenario(load_source(path));
    scenario.consistency_tol = options.consistency_tol;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitLoadFailure;
  }
  return run_results(options, scenario);
}

int cmd_validate(const Options& options, const std::string& path) {
  try {
    const auto scenario = histq::scenario::parse_scenario(load_source(path));
    if (!options.quiet) {
      std::cout << path << ": ok (" << scenario.queries.size() << " queries)\n";
    }
    return kExitOk;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitLoadFailure;
  }
}

int cmd_list_examples() {
  for (const auto& scenario : histq::scenario::builtin_scenarios()) {
    std::cout << scenario.name << "  -  " << scenario.title << "\n";
  }
  return kExitOk;
}

int run_example(const Options& options, const histq::scenario::BuiltinScenario& builtin,
                bool print_results, int& failed_checks) {
  histq::scenario::Scenario scenario;
  try {
    scenario = histq::scenario::parse_scenario({builtin.source, builtin.name});
    scenario.consistency_tol = options.consistency_tol;
  } catch (const std::exception& err) {
    std::cerr << "error: " << builtin.name << ": " << err.what() << "\n";
    return kExitLoadFailure;
  }
  const auto results = histq::scenario::run_scenario(scenario);
  if (print_results) emit(options, render(options, results));

  const auto checks = histq::scenario::check_builtin_expectations(builtin.name, results);
  const bool color = color_enabled();
  int failures = 0;
  for (const auto& check : checks) {
    if (check.passed) continue;
    ++failures;
    if (!options.quiet) {
      std::cerr << builtin.name << ": " << check.name << ": expected "
                << histq::io::format_double(check.expected) << ", got "
                << histq::io::format_double(check.actual) << "\n";
    }
  }
  failed_checks += failures;
  if (!options.quiet) {
    std::ostringstream line;
    line << builtin.name << ": " << (checks.size() - failures) << "/" << checks.size()
         << " expected values matched";
    const std::string text = line.str();
    std::cerr << (color ? (failures == 0 ? "\033[32m" + text + "\033[0m"
                                         : "\033[31m" + text + "\033[0m")
                        : text)
              << "\n";
  }
  return kExitOk;
}

int cmd_examples(const Options& options, const std::string& name) {
  int failed_checks = 0;
  if (name == "all") {
    for (const auto& builtin : histq::scenario::builtin_scenarios()) {
      const int status = run_example(options, builtin, false, failed_checks);
      if (status != kExitOk) return status;
    }
    if (!options.quiet) {
      std::cerr << (failed_checks == 0 ? "all embedded expectations matched"
                                       : "embedded expectation failures: " +
                                             std::to_string(failed_checks))
                << "\n";
    }
    return failed_checks == 0 ? kExitOk : kExitQueryFailure;
  }

  const auto* builtin = histq::scenario::find_builtin(name);
  if (builtin == nullptr) {
    std::cerr << "error: unknown example '" << name << "'. Valid names:";
    for (const auto& scenario : histq::scenario::builtin_scenarios()) {
      std::cerr << " " << scenario.name;
    }
    std::cerr << " all\n";
    return kExitLoadFailure;
  }
  const int status = run_example(options, *builtin, true, failed_checks);
  if (status != kExitOk) return status;
  return failed_checks == 0 ? kExitOk : kExitQueryFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"histq: consistent-histories measurement analysis"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options options;
  app.add_option("--format", options.format, "output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--consistency-tol", options.consistency_tol,
                 "relative decoherence tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--numeric-tol", options.numeric_tol,
                 "absolute tolerance for validation identities")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", options.quiet, "suppress diagnostics");
  app.add_option("--output", options.output_path, "write payload to a file");

  std::string run_path;
  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("path", run_path, "scenario file (.hqs)")->required();

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and validate a scenario file");
  validate->add_option("path", validate_path, "scenario file (.hqs)")->required();

  std::string example_name;
  auto* examples =
      app.add_subcommand("examples", "run a built-in example scenario, or 'all'");
  examples->add_option("name", example_name, "example name or 'all'")->required();

  auto* list = app.add_subcommand("list-examples", "list built-in example scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    histq::set_numeric_tol(options.numeric_tol);
    if (run->parsed()) return cmd_run(options, run_path);
    if (validate->parsed()) return cmd_validate(options, validate_path);
    if (examples->parsed()) return cmd_examples(options, example_name);
    if (list->parsed()) return cmd_list_examples();
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitLoadFailure;
  }
  return kExitOk;
}
