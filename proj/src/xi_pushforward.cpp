#include "stablerep/xi_pushforward.hpp"

#include "stablerep/levy_core.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace stablerep {
namespace {

constexpr double kDropWeight = 1e-15;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("alpha must lie in (0,2)");
}

std::string failed_conditions(const DomainReport& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : r.reasons) {
    if (c.passed) continue;
    os << (first ? "" : ", ") << c.id << " (" << c.note << ")";
    first = false;
  }
  return os.str();
}

double total_weight(const SphericalMeasure& m) {
  double s = 0.0;
  for (const auto& a : m) s += a.weight;
  return s;
}

Vec spherical_mean(const SphericalMeasure& m, Eigen::Index dim) {
  Vec acc = Vec::Zero(dim);
  for (const auto& a : m) acc += a.weight * a.direction.coords();
  return acc;
}

}  // namespace

double gamma_negative(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0) {
    throw InvalidArgument("gamma_negative: alpha must lie in (0,1) or (1,2)");
  }
  return std::tgamma(2.0 - alpha) / ((-alpha) * (1.0 - alpha));
}

SpectralConstant spectral_constant(double alpha) {
  check_alpha(alpha);
  if (alpha == 1.0) return {alpha, std::numbers::pi / 2.0};
  return {alpha, std::abs(gamma_negative(alpha) * std::cos(std::numbers::pi * alpha / 2.0))};
}

SphericalMeasure aggregate_directions(const SphericalMeasure& atoms, double snap) {
  SphericalMeasure out;
  for (const auto& a : atoms) {
    bool merged = false;
    for (auto& o : out) {
      if (same_direction(o.direction.coords(), a.direction.coords(), snap)) {
        o.weight += a.weight;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(a);
  }
  std::erase_if(out, [](const SpectralAtom& a) { return a.weight < kDropWeight; });
  return out;
}

double law_discrepancy(const StableLaw& a, const StableLaw& b, double snap) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (a.alpha != b.alpha || a.dim() != b.dim()) return kInf;
  const SphericalMeasure la = aggregate_directions(a.spectral, snap);
  const SphericalMeasure lb = aggregate_directions(b.spectral, snap);
  if (la.size() != lb.size()) return kInf;
  double worst = (a.tau - b.tau).lpNorm<Eigen::Infinity>();
  for (const auto& x : la) {
    const SpectralAtom* match = nullptr;
    for (const auto& y : lb) {
      if (same_direction(x.direction.coords(), y.direction.coords(), snap)) {
        match = &y;
        break;
      }
    }
    if (match == nullptr) return kInf;
    worst = std::max(worst, std::abs(x.weight - match->weight));
  }
  return worst;
}

PushforwardCertificate pushforward_certificate(double alpha, const Triplet& t, double tol) {
  DomainReport report = in_domain(alpha, t, tol);
  if (!report.member) {
    throw DomainError("triplet outside the domain: " + failed_conditions(report));
  }
  const AtomicMeasure nu = to_atomic(t.nu);
  const Eigen::Index d = nu.dim();
  const SpectralConstant constant = spectral_constant(alpha);

  SphericalMeasure raw;
  raw.reserve(nu.atoms().size());
  std::vector<Vec> tau_terms;
  Vec tau = Vec::Zero(d);
  for (const auto& a : nu.atoms()) {
    const double r = a.point.norm();
    raw.push_back(SpectralAtom{UnitVector::normalized(a.point), alpha * a.mass * std::pow(r, alpha)});
    if (alpha == 1.0) {
      Vec term = -a.mass * std::log(r) * a.point;
      tau += term;
      tau_terms.push_back(std::move(term));
    }
  }
  SphericalMeasure lambda = aggregate_directions(raw);

  StableLaw law{alpha, {}, std::move(tau)};
  law.spectral.reserve(lambda.size());
  for (const auto& l : lambda) law.spectral.push_back(SpectralAtom{l.direction, constant.value * l.weight});
  return PushforwardCertificate{std::move(law), constant, std::move(lambda), std::move(tau_terms),
                                std::move(report)};
}

StableLaw pushforward_law(double alpha, const Triplet& t, double tol) {
  return pushforward_certificate(alpha, t, tol).law;
}

Triplet pushforward_triplet(double alpha, const Triplet& t, double tol) {
  const PushforwardCertificate cert = pushforward_certificate(alpha, t, tol);
  const Eigen::Index d = t.dim();
  if (cert.lambda.empty()) return Triplet::point_mass_at_zero(d);

  PolarMeasure nu(d);
  for (const auto& l : cert.lambda) nu.add(PolarComponent{l.direction, l.weight, PowerLaw{alpha}});
  Vec gamma = alpha == 1.0 ? cert.law.tau
                           : Vec(spherical_mean(cert.lambda, d) / (1.0 - alpha));
  return Triplet{std::move(nu), std::move(gamma), Centering::Raw};
}

Triplet preimage(double alpha, const StableLaw& s, double tol) {
  check_alpha(alpha);
  s.validate();
  if (alpha == 1.0) throw InvalidArgument("preimage: alpha = 1 requires preimage_unit");
  if (s.alpha != alpha) throw InvalidArgument("preimage: law index differs from alpha");
  if (!is_strictly_stable(s, tol)) throw DomainError("preimage: tau must be zero for alpha != 1");

  const double scale = 1.0 / (alpha * spectral_constant(alpha).value);
  AtomicMeasure nu(s.dim());
  for (const auto& a : s.spectral) nu.add(a.direction.coords(), scale * a.weight);
  return Triplet{std::move(nu), Vec::Zero(s.dim()), alpha < 1.0 ? Centering::Drift : Centering::Mean};
}

std::vector<double> solve_shift(const Vec& tau, const SphericalMeasure& lambda) {
  const double tau_norm = tau.norm();
  const double allowed = 1e-9 * (1.0 + tau_norm);
  if (lambda.empty()) {
    if (tau_norm > allowed) throw DomainError("shift outside span");
    return {};
  }
  const Eigen::Index d = tau.size();
  const auto n = static_cast<Eigen::Index>(lambda.size());
  Eigen::MatrixXd m(d, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (lambda[i].direction.dim() != d) throw InvalidArgument("solve_shift: dimension mismatch");
    m.col(i) = lambda[i].weight * lambda[i].direction.coords();
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  const Vec f = cod.solve(tau);
  if ((m * f - tau).norm() > allowed) throw DomainError("shift outside span");
  return {f.data(), f.data() + f.size()};
}

Triplet preimage_unit(const StableLaw& s, double tol) {
  s.validate();
  if (s.alpha != 1.0) throw InvalidArgument("preimage_unit: law must have alpha = 1");
  if (!is_strictly_stable(s, tol)) throw DomainError("preimage_unit: spectral mean is nonzero");

  const Eigen::Index d = s.dim();
  SphericalMeasure lambda;
  lambda.reserve(s.spectral.size());
  for (const auto& a : s.spectral) lambda.push_back(SpectralAtom{a.direction, 2.0 / std::numbers::pi * a.weight});
  const std::vector<double> f = solve_shift(s.tau, lambda);

  AtomicMeasure nu(d);
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double g = std::exp(-f[i]);
    nu.add(g * lambda[i].direction.coords(), lambda[i].weight / g);
  }
  Triplet out{std::move(nu), Vec::Zero(d), Centering::Drift};
  if (!in_domain(1.0, out, tol).member) {
    throw DomainError("preimage_unit: constructed measure failed the alpha = 1 domain check");
  }
  return out;
}

std::pair<Triplet, Triplet> noninjective_pair(const SphericalMeasure& lambda, double tol) {
  if (lambda.empty()) throw InvalidArgument("noninjective_pair: spherical measure must be nonzero");
  const Eigen::Index d = lambda.front().direction.dim();
  if (spherical_mean(lambda, d).lpNorm<Eigen::Infinity>() > tol * (1.0 + total_weight(lambda))) {
    throw DomainError("noninjective_pair: spherical mean must be zero");
  }
  AtomicMeasure unit(d), doubled(d);
  for (const auto& a : lambda) {
    unit.add(a.direction.coords(), a.weight);
    doubled.add(2.0 * a.direction.coords(), a.weight / 2.0);
  }
  return {Triplet{std::move(unit), Vec::Zero(d), Centering::Drift},
          Triplet{std::move(doubled), Vec::Zero(d), Centering::Drift}};
}

}  // namespace stablerep
