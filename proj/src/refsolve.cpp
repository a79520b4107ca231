#include "exactpen/refsolve.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

namespace exactpen {

namespace {

std::mutex cache_mutex;

std::string full(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(const std::string& token) {
  double v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  auto res = std::to_chars(buf, buf + sizeof buf, v, 16);
  return std::string(buf, res.ptr);
}

std::filesystem::path cache_file() { return reference_cache_dir() / "references.tsv"; }

/// Record layout: hash, tag, budget, n, n coordinates, value (tab separated).
std::optional<ReferenceSolution> cache_lookup(const std::string& key, const std::string& tag,
                                              long budget) {
  std::ifstream in(cache_file());
  if (!in) return std::nullopt;
  std::string line;
  std::optional<ReferenceSolution> found;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 5 || fields[0] != key || fields[1] != tag ||
        fields[2] != std::to_string(budget)) {
      continue;
    }
    const auto n = parse_double(fields[3]);
    if (!n || *n < 1 || fields.size() != static_cast<std::size_t>(*n) + 5) continue;
    ReferenceSolution sol;
    sol.point.resize(static_cast<Index>(*n));
    bool ok = true;
    for (Index i = 0; i < sol.point.size() && ok; ++i) {
      const auto v = parse_double(fields[4 + static_cast<std::size_t>(i)]);
      ok = v.has_value();
      if (ok) sol.point(i) = *v;
    }
    const auto value = parse_double(fields.back());
    if (!ok || !value) continue;
    sol.value = *value;
    sol.from_cache = true;
    found = sol;
  }
  return found;
}

void cache_store(const std::string& key, const std::string& tag, long budget,
                 const ReferenceSolution& sol) {
  std::error_code ec;
  std::filesystem::create_directories(reference_cache_dir(), ec);
  std::ostringstream line;
  line << key << '\t' << tag << '\t' << budget << '\t' << sol.point.size();
  for (Index i = 0; i < sol.point.size(); ++i) line << '\t' << full(sol.point(i));
  line << '\t' << full(sol.value) << '\n';
  std::ofstream out(cache_file(), std::ios::app);
  if (out) out << line.str() << std::flush;
}

}  // namespace

double distance_to_intersection(const std::vector<SimpleSetd>& sets, const Vec& x, double tol,
                                long max_iter) {
  return (x - dykstra_project(sets, x, tol, max_iter)).norm();
}

std::string to_string(ReferenceMethod method) {
  return method == ReferenceMethod::Sps ? "sps" : "eppd";
}

std::filesystem::path reference_cache_dir() {
  if (const char* dir = std::getenv("EXACTPEN_CACHE_DIR"); dir && *dir) {
    return std::filesystem::path(dir);
  }
  return std::filesystem::temp_directory_path() / "exactpen_cache";
}

std::uint64_t reference_key(const ProblemInstance& instance, long budget, ReferenceMethod method) {
  const std::string text = "v2|" + instance.fingerprint + "|" + full(instance.cfg.lambda) + "|" +
                           instance.penalty.norm.to_string() + "|" + std::to_string(budget) +
                           "|" + to_string(method);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ReferenceSolution reference_optimum(const ProblemInstance& instance, long budget,
                                    ReferenceMethod method) {
  if (budget < 100000) throw ConfigError("reference_optimum: budget must be >= 1e5");
  const bool cacheable = !instance.fingerprint.empty();
  const std::string key = hex(reference_key(instance, budget, method));
  const std::string tag = to_string(method);
  if (cacheable) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto hit = cache_lookup(key, tag, budget)) return *hit;
  }

  SolverParams params;
  params.record_trace = false;
  params.enforce_lambda_threshold = false;
  ReferenceSolution sol;
  auto keep_better = [&](const RunTrace& trace) {
    const double averaged = instance.penalized(trace.x_hat);
    if (sol.point.size() == 0 || trace.best_value < sol.value) {
      sol.point = trace.best_point;
      sol.value = trace.best_value;
    }
    if (averaged < sol.value) {
      sol.point = trace.x_hat;
      sol.value = averaged;
    }
  };
  if (method == ReferenceMethod::Eppd) {
    params.iterations = budget;
    keep_better(eppd(instance, params));
  } else if (objective_strong_convexity(instance.oracle) > 0) {
    params.iterations = budget;
    keep_better(sps(instance, params));
  } else {
    // Half the budget as one plain run, then restarts from the best point with a
    // halving distance bound. Keeping the best value across stages means a
    // restart can only tighten the estimate.
    constexpr long restarts = 23;
    const long first = budget / 2;
    params.iterations = first;
    keep_better(sps(instance, params));
    ProblemInstance stage = instance;
    double radius = instance.diameter();
    const long rest = budget - first;
    for (long k = 0; k < restarts; ++k) {
      radius /= 2;
      stage.initial_point = sol.point;
      params.iterations = rest / restarts + (k < rest % restarts ? 1 : 0);
      params.distance_bound = radius;
      keep_better(sps(stage, params));
    }
  }
  if (cacheable) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache_store(key, tag, budget, sol);
  }
  return sol;
}

DualBlockd prox_reference(const PenaltyModeld& model, double lambda, double gamma,
                          const DualBlockd& Y, long iters) {
  if (!(gamma > 0)) throw InputError("prox_reference: gamma must be positive");
  if (iters < 1) throw ConfigError("prox_reference: iters must be >= 1");
  for (const auto& set : model.sets) {
    if (!set.has_support_function()) {
      throw CapabilityError("prox_reference: set kind " + std::string(to_string(set.kind())) +
                            " has no closed-form support function");
    }
  }
  DualBlockd current = project_Y(model.norm, lambda, Y);
  DualBlockd best = current;
  double best_value = prox_objective(model, gamma, Y, best);
  DualBlockd grad(Y.rows(), Y.cols());
  for (long t = 1; t <= iters; ++t) {
    for (Index i = 0; i < model.m(); ++i) {
      grad.col(i) = (current.col(i) - Y.col(i)) / gamma +
                    model.sets[i].support_point(Vec(current.col(i)));
    }
    const double step = gamma / std::sqrt(static_cast<double>(t));
    current = project_Y(model.norm, lambda, DualBlockd(current - step * grad));
    const double value = prox_objective(model, gamma, Y, current);
    if (value < best_value) {
      best_value = value;
      best = current;
    }
  }
  return best;
}

}  // namespace exactpen
