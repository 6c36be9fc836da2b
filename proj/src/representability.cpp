#include "stablerep/representability.hpp"

#include "stablerep/levy_core.hpp"
#include "stablerep/simplex_lp.hpp"

#include <algorithm>
#include <cmath>

namespace stablerep {

SpanResult span_contains(const SphericalMeasure& lambda1, const Vec& tau) {
  const double allowed = 1e-9 * (1.0 + tau.norm());
  if (lambda1.empty()) {
    const double r = tau.norm();
    return {r <= allowed, {}, r};
  }
  const auto n = static_cast<Eigen::Index>(lambda1.size());
  Eigen::MatrixXd m(tau.size(), n);
  for (Eigen::Index i = 0; i < n; ++i) m.col(i) = lambda1[i].direction.coords();
  const Vec c = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(m).solve(tau);
  const double r = (m * c - tau).norm();
  return {r <= allowed, {c.data(), c.data() + c.size()}, r};
}

PositiveCombination positive_combination_exists(const std::vector<UnitVector>& directions,
                                                const std::vector<double>& weights) {
  if (directions.empty()) throw InvalidArgument("positive_combination_exists: no directions");
  if (directions.size() != weights.size()) throw InvalidArgument("positive_combination_exists: size mismatch");
  const Eigen::Index d = directions.front().dim();
  const auto n = static_cast<Eigen::Index>(directions.size());

  // Variables (s_1..s_n, t) >= 0 with p_i = s_i + t.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + 1, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (directions[i].dim() != d) throw InvalidArgument("positive_combination_exists: dimension mismatch");
    if (!(weights[i] > 0.0)) throw InvalidArgument("positive_combination_exists: weights must be positive");
    a.col(i).head(d) = directions[i].coords();
    a.col(n).head(d) += directions[i].coords();
    a(d, i) = 1.0;
  }
  a(d, n) = static_cast<double>(n);
  Vec b = Vec::Zero(d + 1);
  b[d] = 1.0;
  Vec c = Vec::Zero(n + 1);
  c[n] = 1.0;

  const LpResult lp = solve_standard_form(a, b, c);
  PositiveCombination out{false, 0.0, {}, {}, true};
  if (lp.status != LpStatus::Optimal) return out;
  const double t = lp.x[n];
  out.min_component = t;
  if (!(t > kPositivityThreshold)) return out;

  out.exists = true;
  out.p.resize(directions.size());
  out.q.resize(directions.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    out.p[i] = lp.x[i] + t;
    out.q[i] = out.p[i] / weights[i];
  }
  return out;
}

std::string to_string(AlphaCase c) {
  switch (c) {
    case AlphaCase::Below1: return "below1";
    case AlphaCase::Equal1: return "equal1";
    case AlphaCase::Above1: return "above1";
  }
  return "below1";
}

RepCertificate series_representable(const StableLaw& s, double tol) {
  s.validate();
  if (!is_strictly_stable(s, tol)) throw DomainError("series_representable: law is not strictly stable");
  const Eigen::Index d = s.dim();

  if (s.alpha < 1.0) {
    return {true, AlphaCase::Below1, {}, preimage(s.alpha, s, tol),
            "every strictly stable law with alpha < 1 has a compound Poisson preimage"};
  }

  if (s.alpha == 1.0) {
    const SpanResult span = span_contains(s.spectral, s.tau);
    if (!span.contains) {
      return {false, AlphaCase::Equal1, {}, std::nullopt, "shift lies outside span supp(lambda_1)"};
    }
    return {true, AlphaCase::Equal1, span.coefficients, preimage_unit(s, tol),
            "shift lies in span supp(lambda_1)"};
  }

  if (s.spectral.empty()) {
    return {true, AlphaCase::Above1, {}, Triplet{AtomicMeasure(d), Vec::Zero(d), Centering::Mean},
            "degenerate law delta_0"};
  }
  std::vector<UnitVector> dirs;
  std::vector<double> weights;
  for (const auto& a : s.spectral) {
    dirs.push_back(a.direction);
    weights.push_back(a.weight);
  }
  const PositiveCombination pc = positive_combination_exists(dirs, weights);
  if (!pc.exists) {
    return {false, AlphaCase::Above1, {}, std::nullopt,
            "no strictly positive q with int q xi lambda_1(dxi) = 0"};
  }

  // nu = c sum_i w_i q_i^{alpha/(alpha-1)} delta at q_i^{1/(1-alpha)} xi_i, c = 1/(alpha C(alpha)).
  const double alpha = s.alpha;
  const double c = 1.0 / (alpha * spectral_constant(alpha).value);
  AtomicMeasure nu(d);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double q = pc.q[i];
    nu.add(std::pow(q, 1.0 / (1.0 - alpha)) * dirs[i].coords(),
           c * weights[i] * std::pow(q, alpha / (alpha - 1.0)));
  }
  return {true, AlphaCase::Above1, pc.q, Triplet{std::move(nu), Vec::Zero(d), Centering::Mean},
          "strictly positive q found; int q^{alpha/(alpha-1)} d lambda_1 is finite for a discrete measure"};
}

bool verify_certificate(const StableLaw& s, const RepCertificate& cert, double tol) {
  if (!cert.representable) return cert.witness.empty() && !cert.preimage;
  if (!cert.preimage) return false;

  double scale = 1.0;
  for (const auto& a : s.spectral) scale = std::max(scale, a.weight);
  scale = std::max(scale, 1.0 + s.tau.lpNorm<Eigen::Infinity>());

  if (cert.alpha_case == AlphaCase::Equal1) {
    Vec acc = Vec::Zero(s.dim());
    if (cert.witness.size() != s.spectral.size()) return false;
    for (std::size_t i = 0; i < cert.witness.size(); ++i) acc += cert.witness[i] * s.spectral[i].direction.coords();
    if ((acc - s.tau).norm() > tol * scale) return false;
  } else if (cert.alpha_case == AlphaCase::Above1 && !s.spectral.empty()) {
    if (cert.witness.size() != s.spectral.size()) return false;
    Vec acc = Vec::Zero(s.dim());
    double mass = 0.0;
    for (std::size_t i = 0; i < cert.witness.size(); ++i) {
      if (!(cert.witness[i] > 0.0)) return false;
      acc += cert.witness[i] * s.spectral[i].weight * s.spectral[i].direction.coords();
      mass += cert.witness[i] * s.spectral[i].weight;
    }
    if (acc.norm() > tol * mass) return false;
  }

  const StableLaw image = pushforward_law(s.alpha, *cert.preimage);
  return law_discrepancy(image, s) <= tol * scale;
}

}  // namespace stablerep
