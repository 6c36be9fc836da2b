#include "stablerep/stat_verify.hpp"

#include "stablerep/levy_core.hpp"

#include <algorithm>
#include <cmath>

namespace stablerep {
namespace {

std::complex<double> ecf_at(const SampleBatch& samples, const Vec& z) {
  if (z.isZero(0.0)) return {1.0, 0.0};
  const auto n = samples.size();
  const auto d = static_cast<std::size_t>(samples.dim);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* x = samples.samples.data() + i * d;
    double phase = 0.0;
    for (std::size_t k = 0; k < d; ++k) phase += z[static_cast<Eigen::Index>(k)] * x[k];
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double inv = 1.0 / static_cast<double>(n);
  return {re * inv, im * inv};
}

void check_inputs(const SampleBatch& samples, const Grid& grid) {
  if (samples.size() == 0) throw InvalidArgument("ecf: empty sample batch");
  for (const auto& z : grid) {
    if (z.size() != samples.dim) throw InvalidArgument("ecf: grid point has wrong dimension");
  }
}

SampleBatch combine(const SampleBatch& a, double ca, const SampleBatch* b, double cb) {
  SampleBatch out = a;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = ca * a.samples[i] + (b ? cb * b->samples[i] : 0.0);
  }
  return out;
}

}  // namespace

Grid default_grid(Eigen::Index dim, std::size_t points, double half_width) {
  if (dim < 1 || points < 1) throw InvalidArgument("default_grid: dim and points must be >= 1");
  std::vector<double> axis(points);
  for (std::size_t i = 0; i < points; ++i) {
    axis[i] = points == 1 ? 0.0
                          : -half_width + 2.0 * half_width * static_cast<double>(i) /
                                              static_cast<double>(points - 1);
  }
  Grid grid;
  if (dim == 1) {
    for (double a : axis) grid.push_back(Vec::Constant(1, a));
    return grid;
  }
  for (double a : axis) {
    for (double b : axis) {
      Vec z = Vec::Zero(dim);
      z[0] = a;
      z[1] = b;
      grid.push_back(std::move(z));
    }
  }
  return grid;
}

std::vector<std::complex<double>> ecf(const SampleBatch& samples, const Grid& grid) {
  check_inputs(samples, grid);
  std::vector<std::complex<double>> out(grid.size());
  const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t g = 0; g < count; ++g) {
    out[static_cast<std::size_t>(g)] = ecf_at(samples, grid[static_cast<std::size_t>(g)]);
  }
  return out;
}

std::vector<std::complex<double>> ecf_serial(const SampleBatch& samples, const Grid& grid) {
  check_inputs(samples, grid);
  std::vector<std::complex<double>> out;
  out.reserve(grid.size());
  for (const auto& z : grid) out.push_back(ecf_at(samples, z));
  return out;
}

CfReport cf_sup_distance(const SampleBatch& samples, const StableLaw& law, const Grid& grid,
                         double mc_constant) {
  if (grid.empty()) throw InvalidArgument("cf_sup_distance: grid is empty");
  if (law.dim() != samples.dim) throw InvalidArgument("cf_sup_distance: law and samples differ in dimension");
  CfReport report{grid, ecf(samples, grid), {}, 0.0,
                  mc_constant / std::sqrt(static_cast<double>(samples.size())), samples.size()};
  report.theoretical.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    report.theoretical.push_back(cf_stable(law, grid[g]));
    report.sup_distance = std::max(report.sup_distance, std::abs(report.empirical[g] - report.theoretical[g]));
  }
  return report;
}

double cf_tolerance(std::size_t n, double tail_diagnostic) {
  return std::max(kMcConstant / std::sqrt(static_cast<double>(n)), 2.0 * tail_diagnostic + 0.005);
}

double mean_tail_diagnostic(const SampleBatch& samples) {
  if (samples.tail_diagnostic.empty()) return 0.0;
  double s = 0.0;
  for (double t : samples.tail_diagnostic) s += t;
  return s / static_cast<double>(samples.tail_diagnostic.size());
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample: both samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double ks_threshold(std::size_t n1, std::size_t n2) {
  const double a = static_cast<double>(n1), b = static_cast<double>(n2);
  return 1.95 * std::sqrt((a + b) / (a * b));
}

StabilityResult stability_statistic(double alpha, const SampleBatch& y, const SampleBatch& ybar,
                                    const SampleBatch& yprime, double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidArgument("stability_statistic: c1 and c2 must be positive");
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("stability_statistic: alpha must lie in (0,2)");
  if (y.size() != ybar.size() || y.dim != ybar.dim || y.dim != yprime.dim) {
    throw InvalidArgument("stability_statistic: batch shapes differ");
  }
  const double scale = std::pow(std::pow(c1, alpha) + std::pow(c2, alpha), 1.0 / alpha);
  const SampleBatch lhs = combine(y, c1, &ybar, c2);
  const SampleBatch rhs = combine(yprime, scale, nullptr, 0.0);

  if (y.dim == 1) {
    const double stat = ks_two_sample(lhs.samples, rhs.samples);
    const double thr = ks_threshold(lhs.size(), rhs.size());
    return {"ks", stat, thr, stat <= thr};
  }
  const Grid grid = default_grid(y.dim);
  const auto e1 = ecf(lhs, grid);
  const auto e2 = ecf(rhs, grid);
  double stat = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) stat = std::max(stat, std::abs(e1[g] - e2[g]));
  const double thr = kMcConstant * std::sqrt(1.0 / static_cast<double>(lhs.size()) +
                                             1.0 / static_cast<double>(rhs.size()));
  return {"ecf", stat, thr, stat <= thr};
}

StabilityResult stability_test(double alpha, const Sampler& sampler, double c1, double c2, std::size_t n,
                               std::uint64_t seed) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidArgument("stability_test: c1 and c2 must be positive");
  const SampleBatch y = sampler(derive_seed(seed, 0), n);
  const SampleBatch ybar = sampler(derive_seed(seed, 1), n);
  const SampleBatch yprime = sampler(derive_seed(seed, 2), n);
  return stability_statistic(alpha, y, ybar, yprime, c1, c2);
}

}  // namespace stablerep
