#pragma once

#include "stablerep/philox.hpp"
#include "stablerep/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stablerep {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kDefaultMaxTerms = 100000;
inline constexpr double kDefaultTailBudget = 1e-4;

struct JumpAtom {
  Vec point;
  double prob;
};

struct Truncation {
  std::size_t max_terms = kDefaultMaxTerms;
  double tail_budget = kDefaultTailBudget;
};

/// Compound Poisson driver: rate theta = nu(R^d), jumps V ~ nu / theta.
struct ShotNoiseSpec {
  double alpha = 0.5;
  double theta = 1.0;
  std::vector<JumpAtom> jump_law;
  Truncation truncation;
  std::uint64_t seed = kDefaultSeed;

  Eigen::Index dim() const;
  /// Throws InvalidArgument on malformed data and DomainError when alpha >= 1 and E V != 0.
  void validate(double tol = kSymbolicTol) const;
  /// theta * law(V).
  AtomicMeasure levy_measure() const;
  double mean_jump_norm() const;

  static ShotNoiseSpec from_levy_measure(double alpha, const AtomicMeasure& nu, Truncation truncation = {},
                                         std::uint64_t seed = kDefaultSeed);
};

/// N x d samples, row-major, with per-sample truncation diagnostics.
struct SampleBatch {
  Eigen::Index dim = 1;
  std::uint64_t seed = 0;
  std::vector<double> samples;
  std::vector<std::size_t> terms_used;
  std::vector<double> tail_diagnostic;

  std::size_t size() const { return terms_used.size(); }
  std::span<const double> row(std::size_t i) const {
    return {samples.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  /// Coordinate k of every sample.
  std::vector<double> column(Eigen::Index k) const;
};

/// Arrival times of a rate-`rate` Poisson process on (0, horizon]: unit-rate epochs
/// Gamma_j = E_1 + ... + E_j from draws 0, 1, ... of `rng`, divided by `rate`.
std::vector<double> arrival_times(double rate, double horizon, const CounterStream& rng);

/// theta^{1/alpha} E|V| sum_{j > terms} Gamma(j - 1/alpha) / Gamma(j), alpha < 1.
/// Closed form: theta^{1/alpha} E|V| Gamma(terms + 1 - 1/alpha) / ((1/alpha - 1) Gamma(terms)).
double expected_tail_bound(const ShotNoiseSpec& spec, std::size_t terms);

struct TruncationPlan {
  std::size_t terms;
  double tail_bound;  // analytic bound (alpha < 1), NaN when no bound applies (alpha >= 1)
  bool capped;        // true when max_terms stopped the search before the budget was met
};

/// alpha < 1: smallest J >= ceil(1/alpha) + 8 with expected_tail_bound <= tail_budget (capped at
/// max_terms). alpha >= 1: J = max_terms.
TruncationPlan plan_truncation(const ShotNoiseSpec& spec);

struct PathValue {
  Vec value;
  std::size_t terms;
  double diagnostic;
};

/// theta^{1/alpha} sum_{j <= terms} Gamma_j^{-1/alpha} V_j for sample `index`. For alpha >= 1 the
/// diagnostic is |S_terms - S_{terms/2}|; otherwise it is `tail_bound`.
PathValue series_path(const ShotNoiseSpec& spec, std::uint64_t index, std::size_t terms,
                      double tail_bound);

/// Shot-noise samples, parallel over sample indices.
SampleBatch sample_series(const ShotNoiseSpec& spec, std::size_t n);

/// Single-threaded reference for sample_series; bit-identical output.
SampleBatch sample_series_serial(const ShotNoiseSpec& spec, std::size_t n);

/// One compound Poisson path and sum_{eps < tau_j <= T} tau_j^{-1/alpha} V_j.
struct CpPath {
  Vec value;
  std::vector<double> arrivals;     // every tau_j <= T
  std::vector<std::size_t> labels;  // jump-law index of V_j
  std::size_t used;                 // number of arrivals in (eps, T]
};

CpPath cp_integral_path(const ShotNoiseSpec& spec, std::uint64_t index, double eps, double horizon);

/// theta^{1/alpha} sum_{j : Gamma_j / theta <= T} Gamma_j^{-1/alpha} V_j on the same randomness
/// as cp_integral_path(spec, index, 0, T).
Vec partial_series_until(const ShotNoiseSpec& spec, std::uint64_t index, double horizon);

struct CpBatch {
  SampleBatch batch;  // tail_diagnostic is 0: the integral over (eps, T] is exact
  std::vector<CpPath> paths;
};

CpBatch sample_cp_integral(const ShotNoiseSpec& spec, double eps, double horizon, std::size_t n);

/// alpha != 1: alpha/(1-alpha) E[V |V|^{alpha-1}]; alpha = 1: -E[V log|V|] (needs E V = 0).
Vec centering_constant(double alpha, const std::vector<JumpAtom>& jump_law, double tol = kSymbolicTol);

}  // namespace stablerep
