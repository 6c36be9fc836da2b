#pragma once

#include "stablerep/types.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace testsupport {

using stablerep::AtomicMeasure;
using stablerep::SpectralAtom;
using stablerep::UnitVector;
using stablerep::Vec;

/// Small seeded generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  Vec gaussian_vec(Eigen::Index d) {
    std::normal_distribution<double> n;
    Vec v(d);
    for (Eigen::Index k = 0; k < d; ++k) v[k] = n(eng_);
    return v;
  }

  UnitVector direction(Eigen::Index d) {
    Vec v = gaussian_vec(d);
    while (v.norm() < 1e-3) v = gaussian_vec(d);
    return UnitVector::normalized(v);
  }

  /// Point with radius in [0.2, 3] so that both |x| <= 1 and |x| > 1 occur.
  Vec point(Eigen::Index d) { return uniform(0.2, 3.0) * direction(d).coords(); }

  AtomicMeasure atomic(Eigen::Index d, int max_atoms) {
    AtomicMeasure nu(d);
    const int n = integer(1, max_atoms);
    for (int i = 0; i < n; ++i) nu.add(point(d), uniform(0.1, 2.0));
    return nu;
  }

  /// Adds reflected atoms so that sum m x = 0 exactly (in exact arithmetic).
  AtomicMeasure zero_mean_atomic(Eigen::Index d, int max_pairs) {
    AtomicMeasure nu(d);
    const int n = integer(1, max_pairs);
    for (int i = 0; i < n; ++i) {
      const Vec x = point(d);
      const double m = uniform(0.1, 2.0);
      const double k = uniform(0.5, 2.0);  // atom at -k x with mass m / k
      nu.add(x, m);
      nu.add(-k * x, m / k);
    }
    return nu;
  }

  std::vector<SpectralAtom> spherical(Eigen::Index d, int max_atoms) {
    std::vector<SpectralAtom> out;
    const int n = integer(1, max_atoms);
    for (int i = 0; i < n; ++i) out.push_back(SpectralAtom{direction(d), uniform(0.1, 3.0)});
    return out;
  }

  /// Spherical measure with zero mean: each atom is paired with its antipode.
  std::vector<SpectralAtom> symmetric_spherical(Eigen::Index d, int max_pairs) {
    std::vector<SpectralAtom> out;
    const int n = integer(1, max_pairs);
    for (int i = 0; i < n; ++i) {
      const UnitVector u = direction(d);
      const double w = uniform(0.1, 3.0);
      out.push_back(SpectralAtom{u, w});
      out.push_back(SpectralAtom{UnitVector::normalized(-u.coords()), w});
    }
    return out;
  }

  /// Zero-mean spherical measure that is generally not symmetric: random atoms plus one
  /// balancing atom in the direction of -sum w xi.
  std::vector<SpectralAtom> zero_mean_spherical(Eigen::Index d, int max_atoms) {
    std::vector<SpectralAtom> out = spherical(d, max_atoms);
    Vec acc = Vec::Zero(d);
    for (const auto& a : out) acc += a.weight * a.direction.coords();
    if (acc.norm() < 1e-6) return out;
    out.push_back(SpectralAtom{UnitVector::normalized(-acc), acc.norm()});
    return out;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// exp(sum m (e^{i<z,x>} - 1 - i<z,x> 1_{|x|<=1}) + i<z,gamma>), written out independently.
inline std::complex<double> raw_cf_oracle(const AtomicMeasure& nu, const Vec& gamma, const Vec& z) {
  std::complex<double> expo(0.0, z.dot(gamma));
  for (const auto& a : nu.atoms()) {
    const double u = z.dot(a.point);
    const double comp = a.point.norm() <= 1.0 ? u : 0.0;
    expo += a.mass * std::complex<double>(std::cos(u) - 1.0, std::sin(u) - comp);
  }
  return std::exp(expo);
}

/// Planar unit vector at `degrees`.
inline UnitVector planar(double degrees) {
  const double r = degrees * std::numbers::pi / 180.0;
  Vec v(2);
  v << std::cos(r), std::sin(r);
  return UnitVector::normalized(v);
}

inline Vec vec1(double a) { return Vec::Constant(1, a); }
inline Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
inline Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace testsupport
