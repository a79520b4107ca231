#include "exactpen/harness.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace exactpen::harness {

namespace fs = std::filesystem;

namespace {

std::string output_path(const std::string& directory, const std::string& file) {
  return (fs::path(directory) / file).string();
}

std::string sanitize(const std::string& text) {
  std::string out;
  for (char c : text) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
  return out;
}

struct Cell {
  std::size_t problem = 0;
  std::size_t solver = 0;
  long iterations = 0;
  std::string problem_label;
  std::string solver_label;
  std::string trace_file;
  bool ok = false;
  std::string error;
  std::string rows;  // long-format CSV rows
  RunTrace trace;
};

}  // namespace

int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::optional<ProblemInstance> instance;
  try {
    config = load_run_config(config_path);
    instance.emplace(make_problem(config.problem.name, config.problem.params));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return BadConfig;
  }

  SolveOutcome outcome;
  try {
    outcome = run_configured(*instance, config.solver);
  } catch (const DoublingFailure& e) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : e.rounds) {
      rounds.push_back({{"round", r.round}, {"lambda", r.lambda}, {"iterations", r.iterations},
                        {"h_p", r.h_p}, {"passed", r.passed}});
    }
    nlohmann::json doc = {{"status", "failed"}, {"diagnostic", e.what()}, {"rounds", rounds}};
    write_file_atomic(output_path(config.output.directory, config.output.summary),
                      doc.dump(2) + "\n");
    err << "doubling failed: " << e.what() << "\n";
    return Failure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return BadConfig;
  } catch (const CapabilityError& e) {
    err << "config error: " << e.what() << "\n";
    return BadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Failure;
  }

  const std::string trace_path = output_path(config.output.directory, config.output.trace);
  const std::string summary_path = output_path(config.output.directory, config.output.summary);
  std::ostringstream csv;
  write_trace_csv(csv, outcome.trace);
  write_file_atomic(trace_path, csv.str());
  const nlohmann::json summary = make_summary(*instance, config, outcome);
  write_file_atomic(summary_path, summary.dump(2) + "\n");

  const RunTrace& t = outcome.trace;
  out << instance->name << " " << t.algorithm << " lambda=" << format_number(t.lambda)
      << " iterations=" << t.iterations_run << " status=" << to_string(t.status);
  if (summary.contains("final")) out << " f_lambda=" << format_number(summary["final"]["f_lambda"]);
  out << "\n" << "wrote " << trace_path << " and " << summary_path << "\n";
  if (t.status == RunStatus::Diverged) {
    err << "divergence guard: " << t.diagnostic << "\n";
    return Diverged;
  }
  return Ok;
}

int cmd_check(const std::string& which, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  std::vector<SuiteReport> suites;
  try {
    if (which == "ce1" || which == "all") suites.push_back(check_ce1());
    if (which == "ce2" || which == "all") suites.push_back(check_ce2());
    if (which == "invariants" || which == "all") suites.push_back(check_invariants(seed));
  } catch (const std::exception& e) {
    err << "check aborted: " << e.what() << "\n";
    return Failure;
  }
  if (suites.empty()) {
    err << "config error: check: expected ce1, ce2, invariants or all, got '" << which << "'\n";
    return BadConfig;
  }
  bool passed = true;
  nlohmann::json doc;
  doc["suites"] = nlohmann::json::array();
  for (const auto& s : suites) {
    passed = passed && s.passed();
    doc["suites"].push_back(to_json(s));
  }
  doc["passed"] = passed;
  out << doc.dump(2) << "\n";
  return passed ? Ok : Failure;
}

int cmd_bench(const std::string& config_path, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  try {
    config = load_bench_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return BadConfig;
  }

  // Labels disambiguate repeated problem names.
  std::map<std::string, int> seen;
  std::vector<std::string> problem_labels;
  for (const auto& p : config.problems) {
    const int k = seen[p.name]++;
    problem_labels.push_back(k == 0 ? p.name : p.name + "_" + std::to_string(k));
  }
  std::vector<std::optional<ProblemInstance>> instances(config.problems.size());
  std::vector<std::string> build_errors(config.problems.size());
  for (std::size_t i = 0; i < config.problems.size(); ++i) {
    try {
      instances[i].emplace(make_problem(config.problems[i].name, config.problems[i].params));
    } catch (const std::exception& e) {
      build_errors[i] = e.what();
    }
  }

  std::vector<Cell> cells;
  for (std::size_t p = 0; p < config.problems.size(); ++p) {
    for (std::size_t s = 0; s < config.solvers.size(); ++s) {
      for (long T : config.iterations) {
        Cell c;
        c.problem = p;
        c.solver = s;
        c.iterations = T;
        c.problem_label = problem_labels[p];
        c.solver_label = config.solvers[s].display_name();
        c.trace_file = (fs::path("cells") / (sanitize(c.problem_label) + "__" +
                                             sanitize(c.solver_label) + "__T" +
                                             std::to_string(T) + ".csv"))
                           .string();
        cells.push_back(std::move(c));
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      Cell& c = cells[i];
      try {
        if (!instances[c.problem]) throw ConfigError(build_errors[c.problem]);
        SolverSpec solver = config.solvers[c.solver];
        solver.params.iterations = c.iterations;
        solver.params.record_trace = true;
        c.trace = run_configured(*instances[c.problem], solver).trace;
        std::ostringstream trace_csv, rows;
        write_trace_csv(trace_csv, c.trace);
        for (const auto& r : c.trace.records) {
          rows << c.problem_label << ',' << c.solver_label << ',' << c.iterations << ',' << r.t
               << ',' << format_number(r.f) << ',' << format_number(r.h_p) << ','
               << format_number(r.elapsed_ms) << '\n';
        }
        c.rows = rows.str();
        write_file_atomic(output_path(config.directory, c.trace_file), trace_csv.str());
        c.ok = true;
      } catch (const std::exception& e) {
        c.error = e.what();
      }
    }
  };
  const int workers =
      std::max(1, std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(1, cells.size()))));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  std::string combined = "problem,solver,iterations,t,f,h_p,time_ms\n";
  for (const auto& c : cells) combined += c.rows;
  const std::string combined_path = output_path(config.directory, "bench.csv");
  write_file_atomic(combined_path, combined);

  nlohmann::json summary;
  summary["cells"] = nlohmann::json::array();
  int failures = 0;
  for (const auto& c : cells) {
    nlohmann::json entry = {{"problem", c.problem_label},
                            {"solver", c.solver_label},
                            {"iterations", c.iterations},
                            {"ok", c.ok}};
    if (c.ok) {
      const ProblemInstance at = instances[c.problem]->with_lambda(c.trace.lambda);
      entry["status"] = to_string(c.trace.status);
      entry["diagnostic"] = c.trace.diagnostic;
      entry["lambda"] = c.trace.lambda;
      entry["f_lambda"] = at.penalized(c.trace.x_hat);
      entry["h_p"] = at.penalty_value(c.trace.x_hat);
      entry["elapsed_ms"] = c.trace.elapsed_ms;
      entry["trace_file"] = c.trace_file;
    } else {
      ++failures;
      entry["error"] = c.error;
    }
    summary["cells"].push_back(entry);
  }

  // Rate fits of the f^lambda gap against T, one per (problem, solver).
  summary["rate_fits"] = nlohmann::json::array();
  if (config.report.reference_budget > 0 && config.iterations.size() >= 2) {
    for (std::size_t p = 0; p < config.problems.size(); ++p) {
      if (!instances[p]) continue;
      for (std::size_t s = 0; s < config.solvers.size(); ++s) {
        std::vector<double> Ts, gaps;
        std::optional<double> reference;
        for (const auto& c : cells) {
          if (c.problem != p || c.solver != s || !c.ok) continue;
          const ProblemInstance at = instances[p]->with_lambda(c.trace.lambda);
          if (!reference) {
            try {
              reference = reference_optimum(at, config.report.reference_budget,
                                            config.report.reference_method)
                              .value;
            } catch (const std::exception& e) {
              err << "reference failed for " << problem_labels[p] << ": " << e.what() << "\n";
              break;
            }
          }
          Ts.push_back(double(c.iterations));
          gaps.push_back(at.penalized(c.trace.x_hat) - *reference);
        }
        if (!reference) continue;
        const auto slope = loglog_slope(Ts, gaps);
        summary["rate_fits"].push_back({{"problem", problem_labels[p]},
                                        {"solver", config.solvers[s].display_name()},
                                        {"reference", *reference},
                                        {"iterations", Ts},
                                        {"gaps", gaps},
                                        {"slope", slope ? nlohmann::json(*slope)
                                                        : nlohmann::json(nullptr)}});
      }
    }
  }
  summary["failures"] = failures;
  summary["combined_csv"] = "bench.csv";
  const std::string summary_path = output_path(config.directory, "bench_summary.json");
  write_file_atomic(summary_path, summary.dump(2) + "\n");

  out << cells.size() << " cells, " << failures << " failed; wrote " << combined_path << " and "
      << summary_path << "\n";
  for (const auto& c : cells) {
    if (!c.ok) err << "cell " << c.problem_label << "/" << c.solver_label << "/T" << c.iterations
                   << " failed: " << c.error << "\n";
  }
  return Ok;
}

}  // namespace exactpen::harness
