#pragma once

#include "exactpen/problems.hpp"
#include "exactpen/refsolve.hpp"
#include "exactpen/solvers.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace exactpen::harness {

struct ProblemSpec {
  std::string name;
  ParamMap params;

  bool operator==(const ProblemSpec&) const = default;
};

struct DoublingSpec {
  std::string base = "eppd";
  double lambda0 = 1.0;
  double epsilon = 1e-2;
  int max_rounds = 40;
  std::optional<long> max_round_budget;

  bool operator==(const DoublingSpec&) const = default;
};

/// `name` is sps, eppd, epapd, smp or doubling; `label` names the cell in bench output.
struct SolverSpec {
  std::string name = "sps";
  std::string label;
  SolverParams params;
  std::optional<DoublingSpec> doubling;

  std::string display_name() const;
  bool operator==(const SolverSpec&) const = default;
};

struct OutputSpec {
  std::string directory = ".";
  std::string trace = "trace.csv";
  std::string summary = "summary.json";

  bool operator==(const OutputSpec&) const = default;
};

struct ReportSpec {
  double epsilon = 1e-2;      // for the feasibility certificate
  long reference_budget = 0;  // > 0 adds the f^lambda - reference surrogate
  ReferenceMethod reference_method = ReferenceMethod::Sps;

  bool operator==(const ReportSpec&) const = default;
};

struct RunConfig {
  ProblemSpec problem;
  SolverSpec solver;
  OutputSpec output;
  ReportSpec report;

  bool operator==(const RunConfig&) const = default;
};

struct BenchConfig {
  std::vector<ProblemSpec> problems;
  std::vector<SolverSpec> solvers;
  std::vector<long> iterations;
  std::string directory = "bench_out";
  int workers = 1;
  ReportSpec report;

  bool operator==(const BenchConfig&) const = default;
};

/// Parsers reject unknown keys and bad values with a ConfigError naming the key path.
RunConfig parse_run_config(const std::string& yaml_text);
RunConfig load_run_config(const std::string& path);
std::string serialize(const RunConfig& config);

BenchConfig parse_bench_config(const std::string& yaml_text);
BenchConfig load_bench_config(const std::string& path);
std::string serialize(const BenchConfig& config);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_number(double value);

/// Header `t,f,h_p,lambda_h_p,elapsed_ms` followed by one row per record.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

/// Upper bound on sup_Y L(x_hat, Y) - inf_x L(x, Y_hat), available when every
/// C_i has a closed-form support function, X is a box or ball and the run
/// produced a dual average.
std::optional<double> duality_gap_bound(const ProblemInstance& instance, const RunTrace& trace);

struct SolveOutcome {
  RunTrace trace;
  std::optional<DoublingResult> doubling;
};

/// Builds the summary document for a finished run.
nlohmann::json make_summary(const ProblemInstance& instance, const RunConfig& config,
                            const SolveOutcome& outcome);

SolveOutcome run_configured(const ProblemInstance& instance, const SolverSpec& solver);

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  nlohmann::json values = nlohmann::json::object();

  bool passed() const { return all_passed(checks); }
};

SuiteReport check_ce1();
SuiteReport check_ce2();

/// Seeded property suite over sets, norms, penalty, prox map, solvers,
/// problems, reference oracles and config handling.
SuiteReport check_invariants(std::uint64_t seed);

nlohmann::json to_json(const SuiteReport& report);

/// Least-squares slope of log(y) against log(x) over pairs with y > 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

enum ExitCode : int { Ok = 0, Failure = 1, Diverged = 2, BadConfig = 3 };

int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_check(const std::string& which, std::uint64_t seed, std::ostream& out, std::ostream& err);
int cmd_bench(const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace exactpen::harness
