#pragma once

#include "stablerep/shotnoise.hpp"
#include "stablerep/types.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stablerep {

using Grid = std::vector<Vec>;

inline constexpr double kMcConstant = 3.5;

/// `points` equally spaced values per axis in [-half_width, half_width]^min(dim, 2),
/// embedded in the first coordinates of R^dim.
Grid default_grid(Eigen::Index dim, std::size_t points = 61, double half_width = 3.0);

/// Empirical characteristic function N^{-1} sum exp(i <z, X_n>); exactly 1 at z = 0.
/// Parallel over grid points.
std::vector<std::complex<double>> ecf(const SampleBatch& samples, const Grid& grid);

/// Single-threaded reference for ecf; bit-identical output.
std::vector<std::complex<double>> ecf_serial(const SampleBatch& samples, const Grid& grid);

struct CfReport {
  Grid grid;
  std::vector<std::complex<double>> empirical;
  std::vector<std::complex<double>> theoretical;
  double sup_distance;
  double mc_bound;  // mc_constant / sqrt(N)
  std::size_t n;
};

CfReport cf_sup_distance(const SampleBatch& samples, const StableLaw& law, const Grid& grid,
                         double mc_constant = kMcConstant);

/// max(3.5 / sqrt(N), 2 * tail + 0.005).
double cf_tolerance(std::size_t n, double tail_diagnostic);

/// Mean of the per-sample truncation diagnostics.
double mean_tail_diagnostic(const SampleBatch& samples);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// 1.95 sqrt((n1 + n2) / (n1 n2)), about the 0.001-level asymptotic critical value.
double ks_threshold(std::size_t n1, std::size_t n2);

struct StabilityResult {
  std::string method;  // "ks" (d = 1) or "ecf" (d >= 2)
  double statistic;
  double threshold;
  bool passed;
};

/// Produces a batch of n samples from the given seed.
using Sampler = std::function<SampleBatch(std::uint64_t seed, std::size_t n)>;

/// Compares c1 Y + c2 Ybar with (c1^alpha + c2^alpha)^{1/alpha} Y' on three independent batches.
StabilityResult stability_statistic(double alpha, const SampleBatch& y, const SampleBatch& ybar,
                                    const SampleBatch& yprime, double c1, double c2);

/// Draws Y, Ybar, Y' with seeds derived from `seed` and runs stability_statistic.
StabilityResult stability_test(double alpha, const Sampler& sampler, double c1, double c2, std::size_t n,
                               std::uint64_t seed = kDefaultSeed);

}  // namespace stablerep
