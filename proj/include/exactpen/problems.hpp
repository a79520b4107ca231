#pragma once

#include "exactpen/instance.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace exactpen {

/// Regularity constant of {s x + y <= 1} and {s x - y <= 1}: 1 / sin(atan(s)).
double wedge_upsilon(double slope);

/// Counter-example 1: f(x, y) = -x - y over 0.1x + y <= 1 and 0.1x - y <= 1,
/// X = [-100, 100]^2, P = l1. Default lambda is ceil(2 upsilon_P L_f) = 29.
ProblemInstance counter_example_1(double lambda = 29.0);

/// F(x, y) = f(x, y) + gamma (d_1 + d_2) for the first counter-example.
double ce1_penalized(const Vec& point, double gamma);

struct Ce1Report {
  double gamma = 4.0;
  double at_10 = 0;  // F(10, 0)
  double at_20 = 0;  // F(20, 0)
  bool passed = false;
};

/// F(10, 0) = -10 and F(20, 0) = -20 + 8 / sqrt(1.01), with F(20, 0) < F(10, 0).
Ce1Report check_counter_example_1(double gamma = 4.0);

/// Distance from (x, y) to the epigraph {y >= x^2}; exact zero on the set.
double parabola_epigraph_distance(double x, double y);

/// Nearest point of {y >= x^2} to (x, y).
Vec project_parabola_epigraph(double x, double y);

struct Ce2Entry {
  double gamma = 0;
  double value = 0;     // F(1/gamma, 1/gamma^2)
  double expected = 0;  // -1/gamma
  bool below_origin = false;
};

struct Ce2Report {
  std::vector<Ce2Entry> entries;
  double at_origin = 0;  // F(0, 0)
  bool passed = false;
};

/// Counter-example 2: f = -2x over {y >= x^2} and {y = 0}.
Ce2Report check_counter_example_2(const std::vector<double>& gammas = {1.0, 10.0, 100.0});

enum class WedgeObjective { Linear, Quadratic };

struct WedgeOptions {
  double slope = 0.1;
  WedgeObjective objective = WedgeObjective::Quadratic;
  std::string norm = "l1";
  std::optional<double> lambda;  // default 2 upsilon_P L_f
  std::optional<Vec> lo;         // default apex - (2, 2)
  std::optional<Vec> hi;         // default apex + (2, 2)
  std::optional<Vec> center;     // quadratic only; default apex + (1, 1)
};

/// Two halfspaces s x +- y <= 1 with apex (1/s, 0) inside a box X. Linear f is
/// -x - y, quadratic f is ||x - c||^2; both are minimised at the apex.
ProblemInstance wedge_testbed(const WedgeOptions& options = {});

enum class GraphMode { Random, Identical };

struct GraphMatchingOptions {
  int n = 10;
  std::uint64_t seed = 1;
  GraphMode mode = GraphMode::Random;
  double edge_probability = 0.3;
  double lambda = 10.0;
  std::string norm = "l1";
};

struct GraphPair {
  Mat A;
  Mat B;
};

/// Symmetric 0/1 adjacency matrices with zero diagonal.
GraphPair erdos_renyi_pair(int n, std::uint64_t seed, GraphMode mode, double p);

/// Largest singular value by power iteration.
double power_iteration_norm(const Mat& A, int steps = 50);

/// min ||A Pi - Pi B||_F^2 over doubly stochastic Pi; x = vec(Pi) column-major,
/// X = [0,1]^{n^2}, C_1 = row simplices, C_2 = column simplices.
ProblemInstance graph_matching(const GraphMatchingOptions& options = {});

enum class ToyKind { Balls, Boxes, Halfspaces, Mixed };

std::string to_string(ToyKind kind);
ToyKind toy_kind_from_string(const std::string& tag);

/// f = 0 over m random sets that all contain a sampled anchor point.
ProblemInstance feasibility_toy(ToyKind kind, int n, int m, std::uint64_t seed,
                                double lambda = 1.0);

struct TwoBoxOptions {
  int n = 2;
  std::optional<Vec> center;  // default (2, -1, 2, -1, ...)
  std::optional<double> lambda;
};

/// ||x - c||^2 over C_1 = [0,1]^n and C_2 = [0.5,1.5]^n, X = [-2,3]^n; upsilon = sqrt(2).
ProblemInstance two_box_quadratic(const TwoBoxOptions& options = {});

enum class OracleView { Saddle, Subgradient };

struct PiecewiseLinearOptions {
  OracleView view = OracleView::Saddle;
  std::optional<double> lambda;  // default 2 upsilon_P L_f
};

/// f(x) = max_i (B x - b)_i = max_{z in simplex} z^T (B x - b) in R^2, over the
/// halfspaces x +- y <= 1 and X = [-2, 2]^2.
ProblemInstance piecewise_linear_toy(const PiecewiseLinearOptions& options = {});

using ParamValue = std::variant<double, std::string, std::vector<double>>;
using ParamMap = std::map<std::string, ParamValue>;

/// Names accepted by make_problem.
const std::vector<std::string>& problem_names();

/// Builds a named instance from config parameters; unknown names or keys throw
/// ConfigError naming the offender.
ProblemInstance make_problem(const std::string& name, const ParamMap& params);

}  // namespace exactpen
