#include "stablerep/types.hpp"

#include <cmath>

namespace stablerep {

UnitVector::UnitVector(Vec coords, double tol) : coords_(std::move(coords)) {
  if (coords_.size() < 1) throw InvalidArgument("UnitVector: dimension must be >= 1");
  if (!coords_.allFinite() || std::abs(coords_.norm() - 1.0) > tol) {
    throw InvalidArgument("UnitVector: norm must equal 1");
  }
}

UnitVector UnitVector::normalized(const Vec& x) {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("UnitVector::normalized: zero or non-finite vector");
  }
  return UnitVector(x / n, Unchecked{});
}

AtomicMeasure::AtomicMeasure(Eigen::Index dim, std::vector<Atom> atoms) : dim_(dim) {
  check_dim(dim);
  for (const auto& a : atoms) check_atom(a);
  atoms_ = std::move(atoms);
}

void AtomicMeasure::check_dim(Eigen::Index dim) {
  if (dim < 1) throw InvalidArgument("AtomicMeasure: dimension must be >= 1");
}

void AtomicMeasure::check_atom(const Atom& a) const {
  if (a.point.size() != dim_) throw InvalidArgument("AtomicMeasure: atom dimension mismatch");
  if (!a.point.allFinite()) throw InvalidArgument("AtomicMeasure: non-finite atom");
  if (a.point.isZero(0.0)) throw InvalidArgument("AtomicMeasure: atom at the origin");
  if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
    throw InvalidArgument("AtomicMeasure: atom mass must be positive and finite");
  }
}

void AtomicMeasure::add(Vec point, double mass) {
  Atom a{std::move(point), mass};
  check_atom(a);
  atoms_.push_back(std::move(a));
}

double AtomicMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

AtomicMeasure AtomicMeasure::scaled(double c) const {
  if (!(c > 0.0)) throw InvalidArgument("AtomicMeasure::scaled: factor must be positive");
  AtomicMeasure out(dim_);
  for (const auto& a : atoms_) out.add(a.point, c * a.mass);
  return out;
}

PolarMeasure::PolarMeasure(Eigen::Index dim, std::vector<PolarComponent> components)
    : dim_(dim) {
  for (auto& c : components) add(std::move(c));
}

void PolarMeasure::add(PolarComponent c) {
  if (c.direction.dim() != dim_) throw InvalidArgument("PolarMeasure: direction dimension mismatch");
  if (!(c.weight > 0.0)) throw InvalidArgument("PolarMeasure: weight must be positive");
  if (const auto* atoms = std::get_if<std::vector<RadialAtom>>(&c.radial)) {
    for (const auto& ra : *atoms) {
      if (!(ra.r > 0.0) || !(ra.p > 0.0)) {
        throw InvalidArgument("PolarMeasure: radial atoms need r > 0 and p > 0");
      }
    }
  } else {
    const double a = std::get<PowerLaw>(c.radial).alpha;
    if (!(a > 0.0 && a < 2.0)) throw InvalidArgument("PolarMeasure: power-law exponent outside (0,2)");
  }
  components_.push_back(std::move(c));
}

bool PolarMeasure::has_power_law() const {
  for (const auto& c : components_) {
    if (std::holds_alternative<PowerLaw>(c.radial)) return true;
  }
  return false;
}

bool PolarMeasure::probability_normalized(double tol) const {
  for (const auto& c : components_) {
    const auto* atoms = std::get_if<std::vector<RadialAtom>>(&c.radial);
    if (atoms == nullptr) return false;
    double s = 0.0;
    for (const auto& ra : *atoms) s += ra.p;
    if (std::abs(s - 1.0) > tol) return false;
  }
  return true;
}

Eigen::Index dim_of(const LevyMeasure& nu) {
  return std::visit([](const auto& m) { return m.dim(); }, nu);
}

bool is_zero_measure(const LevyMeasure& nu) {
  return std::visit([](const auto& m) { return m.empty(); }, nu);
}

std::string to_string(Centering c) {
  switch (c) {
    case Centering::Raw: return "raw";
    case Centering::Drift: return "drift";
    case Centering::Mean: return "mean";
  }
  return "raw";
}

Centering centering_from_string(const std::string& s) {
  if (s == "raw") return Centering::Raw;
  if (s == "drift") return Centering::Drift;
  if (s == "mean") return Centering::Mean;
  throw InvalidArgument("unknown flavor '" + s + "' (expected raw, drift or mean)");
}

void Triplet::validate() const {
  if (gamma.size() < 1) throw InvalidArgument("Triplet: gamma must have dimension >= 1");
  if (!gamma.allFinite()) throw InvalidArgument("Triplet: gamma must be finite");
  if (dim_of(nu) != gamma.size()) throw InvalidArgument("Triplet: measure and gamma dimensions differ");
}

Triplet Triplet::point_mass_at_zero(Eigen::Index dim) {
  return Triplet{AtomicMeasure(dim), Vec::Zero(dim), Centering::Raw};
}

void StableLaw::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw InvalidArgument("StableLaw: alpha must lie in (0,2)");
  if (tau.size() < 1) throw InvalidArgument("StableLaw: tau must have dimension >= 1");
  if (!tau.allFinite()) throw InvalidArgument("StableLaw: tau must be finite");
  for (const auto& a : spectral) {
    if (a.direction.dim() != tau.size()) throw InvalidArgument("StableLaw: direction dimension mismatch");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw InvalidArgument("StableLaw: spectral weights must be positive");
    }
  }
}

Vec StableLaw::spectral_mean() const {
  Vec m = Vec::Zero(tau.size());
  for (const auto& a : spectral) m += a.weight * a.direction.coords();
  return m;
}

}  // namespace stablerep
