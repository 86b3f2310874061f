#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "histq/measurement.hpp"
#include "histq/scenario/parser.hpp"

namespace histq::scenario {

/// An elaborated query, ready to execute against the scenario's objects.
struct Query {
  QueryDecl decl;
};

/// All declared objects plus the ordered query list.
struct Scenario {
  std::string origin;
  ScenarioAst ast;
  std::map<std::string, int> spaces;
  std::map<std::string, Ket> kets;
  std::map<std::string, ComplexMatrix> operators;  // includes isometries
  std::map<std::string, MeasurementModel> models;
  std::map<std::string, HistoryFamily> families;
  std::vector<Query> queries;
  double consistency_tol = kConsistencyTol;
};

struct ConditionalResult {
  std::string given;
  std::string target;
  double probability = 0.0;
};

struct InferenceSummary {
  std::string model;
  std::string initial;
  ConsistencyVerdict verdict = ConsistencyVerdict::Consistent;
  std::vector<InferenceResult> outcomes;
};

struct NoncontextualitySummary {
  std::string first, second;
  NoncontextualityReport report;
  std::vector<std::string> probe_names;
};

using QueryPayload = std::variant<std::monostate, ConsistencyReport, ProbabilityTable,
                                  ConditionalResult, POVM, InferenceSummary,
                                  NoncontextualitySummary>;

struct QueryResult {
  std::string id;
  std::string kind;
  std::string target;
  std::string error;  // empty on success
  QueryPayload payload;
  double elapsed_ms = 0.0;

  bool ok() const { return error.empty(); }
};

struct ResultSet {
  std::string origin;
  std::vector<QueryResult> results;

  const QueryResult* find(const std::string& id) const;
};

/// Builds every declared object, attaching source positions to resolution,
/// type and validation failures.
Scenario elaborate(const ScenarioAst& ast, const std::string& origin = "<inline>");

/// parse_ast + elaborate.
Scenario parse_scenario(const ScenarioSource& src);

/// Executes the queries in order. Query-level failures are recorded on the
/// individual result and do not abort the remaining queries.
ResultSet run_scenario(const Scenario& scenario);

std::string to_string(QueryDecl::Kind kind);

}  // namespace histq::scenario
