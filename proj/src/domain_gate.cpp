#include "stablerep/domain_gate.hpp"

#include "stablerep/levy_core.hpp"
#include "stablerep/xi_pushforward.hpp"

#include <cmath>
#include <limits>

namespace stablerep {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// int |x|^alpha nu(dx), +inf for any power-law component.
double alpha_moment(const LevyMeasure& nu, double alpha) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&nu)) {
    return levy_moments(*atomic, alpha).alpha_moment;
  }
  double acc = 0.0;
  for (const auto& c : std::get<PolarMeasure>(nu).components()) {
    if (std::holds_alternative<PowerLaw>(c.radial)) {
      // int_0^inf r^alpha r^{-a-1} dr diverges at 0 (a >= alpha) or at inf (a <= alpha)
      return kInf;
    }
    for (const auto& ra : std::get<std::vector<RadialAtom>>(c.radial)) {
      acc += c.weight * ra.p * std::pow(ra.r, alpha);
    }
  }
  return acc;
}

double abs_first_moment(const AtomicMeasure& nu) {
  double s = 0.0;
  for (const auto& a : nu.atoms()) s += a.mass * a.point.norm();
  return s;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("alpha must lie in (0,2)");
}

}  // namespace

const Condition* DomainReport::find(const std::string& id) const {
  for (const auto& c : reasons) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

DomainReport in_domain(double alpha, const Triplet& t, double tol) {
  check_alpha(alpha);
  t.validate();
  DomainReport report{alpha, false, {}};

  const double moment = alpha_moment(t.nu, alpha);
  const bool finite_moment = std::isfinite(moment);
  report.reasons.push_back(Condition{condition::kAlphaMoment, finite_moment, moment, Vec(),
                                     finite_moment ? "finite" : "infinite alpha-moment"});
  if (!finite_moment) return report;

  const AtomicMeasure nu = to_atomic(t.nu);
  const Triplet atomic{nu, convert_centering(t, Centering::Raw).gamma, Centering::Raw};
  const double bound = tol * (1.0 + abs_first_moment(nu));
  const LevyMoments moments = levy_moments(nu, alpha);

  auto zero_check = [&](const char* id, const Vec& v, const char* what) {
    const double norm = v.lpNorm<Eigen::Infinity>();
    const bool ok = norm <= bound;
    report.reasons.push_back(Condition{id, ok, norm, v, ok ? std::string(what) + " is zero"
                                                           : std::string(what) + " is nonzero"});
  };

  if (alpha < 1.0) {
    zero_check(condition::kDriftZero, convert_centering(atomic, Centering::Drift).gamma, "drift");
  } else if (alpha > 1.0) {
    zero_check(condition::kMeanZero, convert_centering(atomic, Centering::Mean).gamma, "mean");
  } else {
    zero_check(condition::kDriftZero, convert_centering(atomic, Centering::Drift).gamma, "drift");
    zero_check(condition::kZeroMeanLevy, moments.mean, "int x nu(dx)");
    // For finite nu both log-limits exist; their sum is -sum m x log|x|.
    report.reasons.push_back(Condition{condition::kXlogLimits, true,
                                       moments.xlog.lpNorm<Eigen::Infinity>(), moments.xlog,
                                       "finite measure: eps- and T-limits exist"});
  }

  report.member = true;
  for (const auto& c : report.reasons) report.member = report.member && c.passed;
  return report;
}

IteratedDomainReport in_domain_iterated(double alpha, const Triplet& t, double tol) {
  IteratedDomainReport out{false, in_domain(alpha, t, tol), std::nullopt, kInf, ""};
  if (!out.first.member) {
    out.mechanism = "not in the domain of the first application";
    return out;
  }
  const Triplet image = pushforward_triplet(alpha, t, tol);
  out.pushforward_alpha_moment = alpha_moment(image.nu, alpha);
  out.second = in_domain(alpha, image, tol);
  out.member = out.second->member;
  if (out.member) {
    out.mechanism = "delta_0: push-forward has zero Levy measure";
  } else {
    out.mechanism =
        "push-forward Levy measure lambda(dxi) r^{-alpha-1} dr has divergent alpha-moment "
        "int r^alpha r^{-alpha-1} dr = +inf";
  }
  return out;
}

}  // namespace stablerep
