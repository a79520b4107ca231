#include "exactpen/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace exactpen::harness;
  CLI::App app{"Exact-penalty first-order solvers over intersections of simple sets"};
  app.require_subcommand(1);

  std::string solve_config;
  auto* solve = app.add_subcommand("solve", "Run one configured solver and write trace + summary");
  solve->add_option("config", solve_config, "YAML run config")->required();

  std::string which = "all";
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "Run checker suites and print a JSON report");
  check->add_option("which", which, "ce1, ce2, invariants or all")
      ->check(CLI::IsMember({"ce1", "ce2", "invariants", "all"}));
  check->add_option("--seed", seed, "Seed for the invariant suite");

  std::string bench_config;
  auto* bench = app.add_subcommand("bench", "Run a problem x solver x iterations matrix");
  bench->add_option("config", bench_config, "YAML bench config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : BadConfig;
  }

  try {
    if (*solve) return cmd_solve(solve_config, std::cout, std::cerr);
    if (*check) return cmd_check(which, seed, std::cout, std::cerr);
    if (*bench) return cmd_bench(bench_config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Failure;
  }
  return Failure;
}
