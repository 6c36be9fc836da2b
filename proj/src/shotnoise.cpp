#include "stablerep/shotnoise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stablerep {
namespace {

using Lane = Eigen::Array<double, kDrawBlock, 1>;

/// t^{-p}; exact reciprocal forms for the common exponents p = 1 and p = 2.
inline double inverse_power(double t, double p) {
  if (p == 1.0) return 1.0 / t;
  if (p == 2.0) return 1.0 / (t * t);
  return std::pow(t, -p);
}

/// Flattened jump law and constants shared by all sample kernels.
struct Prepared {
  Eigen::Index dim;
  double inv_alpha;
  double theta;
  double theta_scale;  // theta^{1/alpha}
  std::vector<double> points;  // atoms x dim, row-major
  std::vector<double> cumulative;

  explicit Prepared(const ShotNoiseSpec& spec)
      : dim(spec.dim()),
        inv_alpha(1.0 / spec.alpha),
        theta(spec.theta),
        theta_scale(std::pow(spec.theta, 1.0 / spec.alpha)) {
    double acc = 0.0;
    for (const auto& j : spec.jump_law) {
      acc += j.prob;
      cumulative.push_back(acc);
      points.insert(points.end(), j.point.data(), j.point.data() + dim);
    }
    for (auto& c : cumulative) c /= acc;
  }

  /// Index of the first cumulative probability above u, clamped to the last atom.
  std::size_t pick(double u) const {
    const std::size_t n = cumulative.size();
    if (n <= 16) {
      // Branch-free count; the labels are random, so a search would mispredict.
      std::size_t k = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) k += cumulative[i] <= u;
      return k;
    }
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return it == cumulative.end() ? n - 1 : static_cast<std::size_t>(it - cumulative.begin());
  }

  const double* point(std::size_t k) const { return points.data() + k * static_cast<std::size_t>(dim); }

  /// t^{-1/alpha} over one block.
  void weights(const double* t, double* w) const {
    const Eigen::Map<const Lane, Eigen::Aligned64> tt(t);
    Eigen::Map<Lane, Eigen::Aligned64> ww(w);
    if (inv_alpha == 1.0) {
      ww = tt.inverse();
    } else if (inv_alpha == 2.0) {
      ww = (tt * tt).inverse();
    } else {
      ww = (-inv_alpha * tt.log()).exp();
    }
  }
};

/// Unit-rate epochs Gamma_j, weights Gamma_j^{-1/alpha} and labels of one path, a block at a time.
class TermBlocks {
 public:
  TermBlocks(const Prepared& prep, const CounterStream& rng) : prep_(prep), rng_(rng) {}

  void load_next() {
    fill_draw_block(rng_, block_++, draws_);
    for (std::size_t i = 0; i < kDrawBlock; ++i) {
      epoch_ += draws_.exponential[i];
      epochs_[i] = epoch_;
    }
    prep_.weights(epochs_, weights_);
  }

  double epoch(std::size_t i) const { return epochs_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::size_t label(std::size_t i) const { return prep_.pick(draws_.label_unit[i]); }

 private:
  const Prepared& prep_;
  const CounterStream& rng_;
  std::uint64_t block_ = 0;
  double epoch_ = 0.0;
  DrawBlock draws_;
  alignas(64) double epochs_[kDrawBlock];
  alignas(64) double weights_[kDrawBlock];
};

/// Writes theta^{1/alpha} sum_{j<terms} Gamma_j^{-1/alpha} V_j into `out`; returns the diagnostic.
double series_kernel(const Prepared& prep, std::uint64_t seed, std::uint64_t index, std::size_t terms,
                     double tail_bound, double* out) {
  const CounterStream rng(seed, index);
  TermBlocks blocks(prep, rng);
  const auto d = static_cast<std::size_t>(prep.dim);
  std::vector<double> sum(d, 0.0), half(d, 0.0);
  const std::size_t half_terms = terms / 2;
  const bool cauchy_diagnostic = prep.inv_alpha <= 1.0;

  for (std::size_t start = 0; start < terms; start += kDrawBlock) {
    blocks.load_next();
    const std::size_t m = std::min(kDrawBlock, terms - start);
    if (d == 1 && !(cauchy_diagnostic && start < half_terms && half_terms <= start + m)) {
      double acc = sum[0];
      for (std::size_t i = 0; i < m; ++i) acc += blocks.weight(i) * prep.points[blocks.label(i)];
      sum[0] = acc;
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double w = blocks.weight(i);
      const double* x = prep.point(blocks.label(i));
      for (std::size_t k = 0; k < d; ++k) sum[k] += w * x[k];
      if (cauchy_diagnostic && start + i + 1 == half_terms) half = sum;
    }
  }

  double diff2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    out[k] = prep.theta_scale * sum[k];
    const double delta = prep.theta_scale * (sum[k] - half[k]);
    diff2 += delta * delta;
  }
  return cauchy_diagnostic ? std::sqrt(diff2) : tail_bound;
}

SampleBatch empty_batch(const ShotNoiseSpec& spec, std::size_t n) {
  SampleBatch batch;
  batch.dim = spec.dim();
  batch.seed = spec.seed;
  batch.samples.assign(n * static_cast<std::size_t>(batch.dim), 0.0);
  batch.terms_used.assign(n, 0);
  batch.tail_diagnostic.assign(n, 0.0);
  return batch;
}

}  // namespace

Eigen::Index ShotNoiseSpec::dim() const {
  return jump_law.empty() ? 1 : jump_law.front().point.size();
}

void ShotNoiseSpec::validate(double tol) const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("ShotNoiseSpec: alpha must lie in (0,2)");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("ShotNoiseSpec: theta must be positive");
  if (jump_law.empty()) throw InvalidArgument("ShotNoiseSpec: jump law is empty");
  if (truncation.max_terms < 1) throw InvalidArgument("ShotNoiseSpec: max_terms must be >= 1");
  if (!(truncation.tail_budget > 0.0)) throw InvalidArgument("ShotNoiseSpec: tail_budget must be positive");
  const Eigen::Index d = dim();
  double total = 0.0, abs_mean = 0.0;
  Vec mean = Vec::Zero(d);
  for (const auto& j : jump_law) {
    if (j.point.size() != d) throw InvalidArgument("ShotNoiseSpec: jump dimension mismatch");
    if (!j.point.allFinite() || j.point.isZero(0.0)) {
      throw InvalidArgument("ShotNoiseSpec: jumps must be finite and nonzero");
    }
    if (!(j.prob > 0.0)) throw InvalidArgument("ShotNoiseSpec: jump probabilities must be positive");
    total += j.prob;
    mean += j.prob * j.point;
    abs_mean += j.prob * j.point.norm();
  }
  if (std::abs(total - 1.0) > tol) throw InvalidArgument("ShotNoiseSpec: jump probabilities must sum to 1");
  if (alpha >= 1.0 && mean.lpNorm<Eigen::Infinity>() > tol * (1.0 + abs_mean)) {
    throw DomainError("series diverges: alpha >= 1 requires a zero-mean jump law");
  }
}

AtomicMeasure ShotNoiseSpec::levy_measure() const {
  AtomicMeasure nu(dim());
  for (const auto& j : jump_law) nu.add(j.point, theta * j.prob);
  return nu;
}

double ShotNoiseSpec::mean_jump_norm() const {
  double m = 0.0;
  for (const auto& j : jump_law) m += j.prob * j.point.norm();
  return m;
}

ShotNoiseSpec ShotNoiseSpec::from_levy_measure(double alpha, const AtomicMeasure& nu, Truncation truncation,
                                               std::uint64_t seed) {
  const double theta = nu.total_mass();
  if (!(theta > 0.0)) throw InvalidArgument("from_levy_measure: Levy measure is zero");
  ShotNoiseSpec spec{alpha, theta, {}, truncation, seed};
  for (const auto& a : nu.atoms()) spec.jump_law.push_back(JumpAtom{a.point, a.mass / theta});
  return spec;
}

std::vector<double> SampleBatch::column(Eigen::Index k) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = samples[i * static_cast<std::size_t>(dim) + k];
  return out;
}

std::vector<double> arrival_times(double rate, double horizon, const CounterStream& rng) {
  if (!(rate > 0.0) || !(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument("arrival_times: rate and horizon must be positive and finite");
  }
  std::vector<double> times;
  double epoch = 0.0;
  DrawBlock draws;
  for (std::uint64_t b = 0;; ++b) {
    fill_draw_block(rng, b, draws);
    for (double e : draws.exponential) {
      epoch += e;
      const double t = epoch / rate;
      if (t > horizon) return times;
      times.push_back(t);
    }
  }
}

double expected_tail_bound(const ShotNoiseSpec& spec, std::size_t terms) {
  const double beta = 1.0 / spec.alpha;
  if (!(beta > 1.0)) throw InvalidArgument("expected_tail_bound: requires alpha < 1");
  const double j = static_cast<double>(terms);
  if (!(j + 1.0 > beta)) throw InvalidArgument("expected_tail_bound: requires terms + 1 > 1/alpha");
  const double tail = std::exp(std::lgamma(j + 1.0 - beta) - std::lgamma(j)) / (beta - 1.0);
  return std::pow(spec.theta, beta) * spec.mean_jump_norm() * tail;
}

TruncationPlan plan_truncation(const ShotNoiseSpec& spec) {
  const std::size_t cap = spec.truncation.max_terms;
  if (spec.alpha >= 1.0) return {cap, std::numeric_limits<double>::quiet_NaN(), false};

  const auto floor_terms = static_cast<std::size_t>(std::ceil(1.0 / spec.alpha)) + 8;
  if (floor_terms >= cap) {
    const bool bound_valid = static_cast<double>(cap) + 1.0 > 1.0 / spec.alpha;
    return {cap, bound_valid ? expected_tail_bound(spec, cap) : std::numeric_limits<double>::infinity(), true};
  }

  const double budget = spec.truncation.tail_budget;
  if (expected_tail_bound(spec, floor_terms) <= budget) {
    return {floor_terms, expected_tail_bound(spec, floor_terms), false};
  }
  // The bound decreases in J: gallop then bisect on (lo fails, hi passes].
  std::size_t lo = floor_terms, hi = floor_terms;
  while (true) {
    hi = std::min(cap, hi * 2);
    if (expected_tail_bound(spec, hi) <= budget) break;
    if (hi == cap) return {cap, expected_tail_bound(spec, cap), true};
    lo = hi;
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (expected_tail_bound(spec, mid) <= budget ? hi : lo) = mid;
  }
  return {hi, expected_tail_bound(spec, hi), false};
}

PathValue series_path(const ShotNoiseSpec& spec, std::uint64_t index, std::size_t terms, double tail_bound) {
  spec.validate();
  const Prepared prep(spec);
  PathValue out{Vec::Zero(prep.dim), terms, 0.0};
  out.diagnostic = series_kernel(prep, spec.seed, index, terms, tail_bound, out.value.data());
  return out;
}

SampleBatch sample_series(const ShotNoiseSpec& spec, std::size_t n) {
  spec.validate();
  const Prepared prep(spec);
  const TruncationPlan plan = plan_truncation(spec);
  SampleBatch batch = empty_batch(spec, n);
  const auto d = static_cast<std::size_t>(prep.dim);
  const auto count = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    batch.tail_diagnostic[idx] =
        series_kernel(prep, spec.seed, idx, plan.terms, plan.tail_bound, batch.samples.data() + idx * d);
    batch.terms_used[idx] = plan.terms;
  }
  return batch;
}

SampleBatch sample_series_serial(const ShotNoiseSpec& spec, std::size_t n) {
  spec.validate();
  const Prepared prep(spec);
  const TruncationPlan plan = plan_truncation(spec);
  SampleBatch batch = empty_batch(spec, n);
  const auto d = static_cast<std::size_t>(prep.dim);
  for (std::size_t i = 0; i < n; ++i) {
    batch.tail_diagnostic[i] =
        series_kernel(prep, spec.seed, i, plan.terms, plan.tail_bound, batch.samples.data() + i * d);
    batch.terms_used[i] = plan.terms;
  }
  return batch;
}

CpPath cp_integral_path(const ShotNoiseSpec& spec, std::uint64_t index, double eps, double horizon) {
  if (!(eps >= 0.0) || !(eps < horizon)) throw InvalidArgument("cp_integral_path: requires 0 <= eps < T");
  spec.validate();
  const Prepared prep(spec);
  const CounterStream rng(spec.seed, index);
  CpPath path{Vec::Zero(prep.dim), arrival_times(spec.theta, horizon, rng), {}, 0};
  path.labels.reserve(path.arrivals.size());
  DrawBlock draws;
  for (std::size_t j = 0; j < path.arrivals.size(); ++j) {
    if (j % kDrawBlock == 0) fill_draw_block(rng, j / kDrawBlock, draws);
    const std::size_t label = prep.pick(draws.label_unit[j % kDrawBlock]);
    path.labels.push_back(label);
    const double t = path.arrivals[j];
    if (t <= eps) continue;
    const double w = inverse_power(t, prep.inv_alpha);
    const double* x = prep.point(label);
    for (Eigen::Index k = 0; k < prep.dim; ++k) path.value[k] += w * x[k];
    ++path.used;
  }
  return path;
}

Vec partial_series_until(const ShotNoiseSpec& spec, std::uint64_t index, double horizon) {
  spec.validate();
  const Prepared prep(spec);
  const CounterStream rng(spec.seed, index);
  TermBlocks blocks(prep, rng);
  Vec sum = Vec::Zero(prep.dim);
  while (true) {
    blocks.load_next();
    for (std::size_t i = 0; i < kDrawBlock; ++i) {
      if (blocks.epoch(i) / prep.theta > horizon) return prep.theta_scale * sum;
      const double* x = prep.point(blocks.label(i));
      for (Eigen::Index k = 0; k < prep.dim; ++k) sum[k] += blocks.weight(i) * x[k];
    }
  }
}

CpBatch sample_cp_integral(const ShotNoiseSpec& spec, double eps, double horizon, std::size_t n) {
  if (!(eps >= 0.0) || !(eps < horizon)) throw InvalidArgument("sample_cp_integral: requires 0 <= eps < T");
  spec.validate();
  CpBatch out{empty_batch(spec, n), std::vector<CpPath>(n)};
  const auto d = static_cast<std::size_t>(spec.dim());
  const auto count = static_cast<std::int64_t>(n);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out.paths[idx] = cp_integral_path(spec, idx, eps, horizon);
    std::copy_n(out.paths[idx].value.data(), d, out.batch.samples.data() + idx * d);
    out.batch.terms_used[idx] = out.paths[idx].used;
  }
  return out;
}

Vec centering_constant(double alpha, const std::vector<JumpAtom>& jump_law, double tol) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("centering_constant: alpha must lie in (0,2)");
  if (jump_law.empty()) throw InvalidArgument("centering_constant: jump law is empty");
  const Eigen::Index d = jump_law.front().point.size();
  Vec mean = Vec::Zero(d);
  double abs_mean = 0.0;
  for (const auto& j : jump_law) {
    mean += j.prob * j.point;
    abs_mean += j.prob * j.point.norm();
  }
  if (alpha >= 1.0 && mean.lpNorm<Eigen::Infinity>() > tol * (1.0 + abs_mean)) {
    throw DomainError("centering_constant: alpha >= 1 requires a zero-mean jump law");
  }
  Vec a = Vec::Zero(d);
  for (const auto& j : jump_law) {
    const double r = j.point.norm();
    if (alpha == 1.0) {
      a -= j.prob * std::log(r) * j.point;
    } else {
      a += j.prob * std::pow(r, alpha - 1.0) * j.point;
    }
  }
  if (alpha != 1.0) a *= alpha / (1.0 - alpha);
  return a;
}

}  // namespace stablerep
