#pragma once

#include <string>
#include <vector>

#include "histq/scenario/runner.hpp"

namespace histq::scenario {

struct BuiltinScenario {
  std::string name;
  std::string title;
  std::string source;
};

const std::vector<BuiltinScenario>& builtin_scenarios();
const BuiltinScenario* find_builtin(const std::string& name);

struct ExpectationCheck {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  bool passed = false;
};

/// Compares a run of the named built-in scenario against its embedded
/// expected values (absolute tolerance 1e-9). Throws UnknownOutcomeError
/// for names outside the registry.
std::vector<ExpectationCheck> check_builtin_expectations(const std::string& name,
                                                         const ResultSet& results);

}  // namespace histq::scenario
