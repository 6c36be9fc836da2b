#include "stablerep/levy_core.hpp"

#include <cmath>
#include <numbers>

namespace stablerep {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> atomic_exponent(const AtomicMeasure& nu, const Vec& z, Centering flavor) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& a : nu.atoms()) {
    const double zx = z.dot(a.point);
    std::complex<double> term = std::exp(kI * zx) - 1.0;
    const bool compensate = flavor == Centering::Mean ||
                            (flavor == Centering::Raw && in_unit_ball(a.point));
    if (compensate) term -= kI * zx;
    acc += a.mass * term;
  }
  return acc;
}

}  // namespace

bool same_direction(const Vec& unit_a, const Vec& unit_b, double snap) {
  return (unit_a - unit_b).lpNorm<Eigen::Infinity>() <= snap;
}

AtomicMeasure to_atomic(const LevyMeasure& nu) {
  if (const auto* atomic = std::get_if<AtomicMeasure>(&nu)) return *atomic;
  const auto& polar = std::get<PolarMeasure>(nu);
  if (polar.has_power_law()) {
    throw DomainError("infinite alpha-moment: power-law Levy measure has no atomic form");
  }
  return reconstruct(polar);
}

std::complex<double> cf_infdiv(const Triplet& t, const Vec& z) {
  t.validate();
  if (z.size() != t.dim()) throw InvalidArgument("cf_infdiv: z has wrong dimension");
  if (const auto* polar = std::get_if<PolarMeasure>(&t.nu); polar && polar->has_power_law()) {
    throw DomainError("cf_infdiv: power-law Levy measure; evaluate cf_stable of the push-forward law");
  }
  const AtomicMeasure nu = to_atomic(t.nu);
  return std::exp(atomic_exponent(nu, z, t.flavor) + kI * t.gamma.dot(z));
}

std::complex<double> cf_stable(const StableLaw& s, const Vec& z) {
  s.validate();
  if (z.size() != s.dim()) throw InvalidArgument("cf_stable: z has wrong dimension");
  std::complex<double> exponent = kI * z.dot(s.tau);
  const bool unit = s.alpha == 1.0;
  const double skew = unit ? 0.0 : std::tan(std::numbers::pi * s.alpha / 2.0);
  for (const auto& a : s.spectral) {
    const double u = z.dot(a.direction.coords());
    if (u == 0.0) continue;
    const double au = std::abs(u);
    std::complex<double> term;
    if (unit) {
      term = au + kI * (2.0 / std::numbers::pi) * u * std::log(au);
    } else {
      const double sgn = u > 0.0 ? 1.0 : -1.0;
      term = std::pow(au, s.alpha) * (1.0 - kI * skew * sgn);
    }
    exponent -= a.weight * term;
  }
  return std::exp(exponent);
}

std::optional<Vec> small_jump_first_moment(const LevyMeasure& nu) {
  const Eigen::Index d = dim_of(nu);
  Vec acc = Vec::Zero(d);
  if (const auto* atomic = std::get_if<AtomicMeasure>(&nu)) {
    for (const auto& a : atomic->atoms()) {
      if (in_unit_ball(a.point)) acc += a.mass * a.point;
    }
    return acc;
  }
  for (const auto& c : std::get<PolarMeasure>(nu).components()) {
    if (const auto* law = std::get_if<PowerLaw>(&c.radial)) {
      // int_0^1 r * r^{-alpha-1} dr
      if (law->alpha >= 1.0) return std::nullopt;
      acc += c.weight / (1.0 - law->alpha) * c.direction.coords();
    } else {
      for (const auto& ra : std::get<std::vector<RadialAtom>>(c.radial)) {
        const Vec x = ra.r * c.direction.coords();
        if (in_unit_ball(x)) acc += c.weight * ra.p * x;
      }
    }
  }
  return acc;
}

std::optional<Vec> large_jump_first_moment(const LevyMeasure& nu) {
  const Eigen::Index d = dim_of(nu);
  Vec acc = Vec::Zero(d);
  if (const auto* atomic = std::get_if<AtomicMeasure>(&nu)) {
    for (const auto& a : atomic->atoms()) {
      if (!in_unit_ball(a.point)) acc += a.mass * a.point;
    }
    return acc;
  }
  for (const auto& c : std::get<PolarMeasure>(nu).components()) {
    if (const auto* law = std::get_if<PowerLaw>(&c.radial)) {
      // int_1^inf r * r^{-alpha-1} dr
      if (law->alpha <= 1.0) return std::nullopt;
      acc += c.weight / (law->alpha - 1.0) * c.direction.coords();
    } else {
      for (const auto& ra : std::get<std::vector<RadialAtom>>(c.radial)) {
        const Vec x = ra.r * c.direction.coords();
        if (!in_unit_ball(x)) acc += c.weight * ra.p * x;
      }
    }
  }
  return acc;
}

Triplet convert_centering(const Triplet& t, Centering target) {
  t.validate();
  if (t.flavor == target) return t;

  auto require = [](std::optional<Vec> v, const char* what) {
    if (!v) throw DomainError(std::string("convert_centering: infinite ") + what);
    return *v;
  };

  Vec raw = t.gamma;
  if (t.flavor == Centering::Drift) {
    raw += require(small_jump_first_moment(t.nu), "small-jump first moment");
  } else if (t.flavor == Centering::Mean) {
    raw -= require(large_jump_first_moment(t.nu), "large-jump first moment");
  }

  Triplet out{t.nu, raw, Centering::Raw};
  if (target == Centering::Drift) {
    out.gamma = raw - require(small_jump_first_moment(t.nu), "small-jump first moment");
  } else if (target == Centering::Mean) {
    out.gamma = raw + require(large_jump_first_moment(t.nu), "large-jump first moment");
  }
  out.flavor = target;
  return out;
}

bool drift_mean_coincide(const Triplet& t, double tol) {
  const Triplet raw = convert_centering(t, Centering::Raw);
  const auto small = small_jump_first_moment(raw.nu);
  const auto big = large_jump_first_moment(raw.nu);
  if (!small || !big) return false;  // int |x| nu(dx) = infinity
  double mass_scale = 0.0;
  if (const auto* atomic = std::get_if<AtomicMeasure>(&raw.nu)) {
    for (const auto& a : atomic->atoms()) mass_scale += a.mass * a.point.norm();
  } else {
    mass_scale = small->norm() + big->norm();
  }
  const Vec mean = *small + *big;
  const double bound = tol * (1.0 + mass_scale);
  return mean.lpNorm<Eigen::Infinity>() <= bound &&
         (raw.gamma - *small).lpNorm<Eigen::Infinity>() <= bound;
}

PolarMeasure polar_decompose(const AtomicMeasure& nu, double snap) {
  struct Group {
    UnitVector direction;
    double weight;
    std::vector<RadialAtom> radial;
  };
  std::vector<Group> groups;
  for (const auto& a : nu.atoms()) {
    const double r = a.point.norm();
    UnitVector xi = UnitVector::normalized(a.point);
    Group* hit = nullptr;
    for (auto& g : groups) {
      if (same_direction(g.direction.coords(), xi.coords(), snap)) {
        hit = &g;
        break;
      }
    }
    if (hit == nullptr) {
      groups.push_back(Group{std::move(xi), 0.0, {}});
      hit = &groups.back();
    }
    hit->weight += a.mass;
    hit->radial.push_back(RadialAtom{r, a.mass});
  }

  PolarMeasure out(nu.dim());
  for (auto& g : groups) {
    for (auto& ra : g.radial) ra.p /= g.weight;
    out.add(PolarComponent{std::move(g.direction), g.weight, std::move(g.radial)});
  }
  return out;
}

AtomicMeasure reconstruct(const PolarMeasure& polar) {
  AtomicMeasure out(polar.dim());
  for (const auto& c : polar.components()) {
    const auto* atoms = std::get_if<std::vector<RadialAtom>>(&c.radial);
    if (atoms == nullptr) throw DomainError("reconstruct: power-law radial part is not atomic");
    for (const auto& ra : *atoms) out.add(ra.r * c.direction.coords(), c.weight * ra.p);
  }
  return out;
}

LevyMoments levy_moments(const AtomicMeasure& nu, double alpha) {
  LevyMoments m{0.0, Vec::Zero(nu.dim()), Vec::Zero(nu.dim())};
  for (const auto& a : nu.atoms()) {
    const double r = a.point.norm();
    m.alpha_moment += a.mass * std::pow(r, alpha);
    m.mean += a.mass * a.point;
    m.xlog += a.mass * std::log(r) * a.point;
  }
  return m;
}

bool is_strictly_stable(const StableLaw& s, double tol) {
  s.validate();
  if (s.alpha != 1.0) return s.tau.lpNorm<Eigen::Infinity>() <= tol;
  double total = 0.0;
  for (const auto& a : s.spectral) total += a.weight;
  return s.spectral_mean().lpNorm<Eigen::Infinity>() <= tol * (1.0 + total);
}

}  // namespace stablerep
