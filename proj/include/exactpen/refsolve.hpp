#pragma once

#include "exactpen/dykstra.hpp"
#include "exactpen/proxmap.hpp"
#include "exactpen/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace exactpen {

/// ||x - P_C(x)|| for C the intersection of `sets`, with P_C computed by Dykstra.
double distance_to_intersection(const std::vector<SimpleSetd>& sets, const Vec& x,
                                double tol = 1e-10, long max_iter = 1000000);

enum class ReferenceMethod { Sps, Eppd };

std::string to_string(ReferenceMethod method);

struct ReferenceSolution {
  Vec point;
  double value = 0;  // f^lambda(point)
  bool from_cache = false;
};

/// Cache directory from EXACTPEN_CACHE_DIR, else a folder under the system temp dir.
std::filesystem::path reference_cache_dir();

/// FNV-1a over the instance fingerprint, lambda, norm, budget and method.
std::uint64_t reference_key(const ProblemInstance& instance, long budget, ReferenceMethod method);

/// Long-run estimate of min f^lambda over X: the better of the best iterate and
/// the averaged output of `budget` iterations. Convex SPS references restart in
/// stages with a halving distance bound. Results are cached on disk by
/// instance hash; instances with an empty fingerprint are never cached.
ReferenceSolution reference_optimum(const ProblemInstance& instance, long budget,
                                    ReferenceMethod method = ReferenceMethod::Sps);

/// Projected subgradient on the prox objective over Y^lambda_P with steps
/// gamma / sqrt(t); returns the best iterate.
DualBlockd prox_reference(const PenaltyModeld& model, double lambda, double gamma,
                          const DualBlockd& Y, long iters);

}  // namespace exactpen
