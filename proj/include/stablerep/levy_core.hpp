#pragma once

#include "stablerep/types.hpp"

#include <complex>
#include <optional>

namespace stablerep {

/// |x| <= 1, the small-jump region of the Levy-Khintchine compensator.
inline bool in_unit_ball(const Vec& x) { return x.norm() <= 1.0; }

/// True when x/|x| and y/|y| agree coordinate-wise within `snap`.
bool same_direction(const Vec& unit_a, const Vec& unit_b, double snap = kSymbolicTol);

/// Characteristic function of mu_(0, nu, gamma) in the triplet's own centering.
/// Power-law (infinite) Levy measures are rejected; use cf_stable on their push-forward law.
std::complex<double> cf_infdiv(const Triplet& t, const Vec& z);

/// Characteristic function of a stable law in the (alpha, lambda_1, tau) parametrization.
/// For alpha = 1 the term <z,xi> log|<z,xi>| is taken as 0 where <z,xi> = 0.
std::complex<double> cf_stable(const StableLaw& s, const Vec& z);

/// int_{|x|<=1} x nu(dx); nullopt when the integral diverges.
std::optional<Vec> small_jump_first_moment(const LevyMeasure& nu);

/// int_{|x|>1} x nu(dx); nullopt when the integral diverges.
std::optional<Vec> large_jump_first_moment(const LevyMeasure& nu);

/// Re-expresses gamma in the `target` centering. Throws DomainError when the
/// first moment required by the target centering is infinite.
Triplet convert_centering(const Triplet& t, Centering target);

/// mu_(0,nu,0)_0 == mu_(0,nu,0)_1 together with gamma = int_{|x|<=1} x nu(dx).
/// Non-raw inputs are converted to raw first.
bool drift_mean_coincide(const Triplet& t, double tol = kSymbolicTol);

/// Spherical weights lambda(xi) = nu{x : x/|x| = xi} with probability radial parts.
/// Directions closer than `snap` (coordinate-wise) are merged, keeping first-seen order.
PolarMeasure polar_decompose(const AtomicMeasure& nu, double snap = kSymbolicTol);

/// Inverse of polar_decompose for point-mass radial parts.
AtomicMeasure reconstruct(const PolarMeasure& polar);

/// Finite atomic view of nu; throws DomainError for power-law radial parts.
AtomicMeasure to_atomic(const LevyMeasure& nu);

struct LevyMoments {
  double alpha_moment;  // sum m |x|^alpha
  Vec mean;             // sum m x
  Vec xlog;             // sum m x log|x|
};

LevyMoments levy_moments(const AtomicMeasure& nu, double alpha);

/// tau = 0 for alpha != 1; zero spectral mean for alpha = 1.
bool is_strictly_stable(const StableLaw& s, double tol = kSymbolicTol);

}  // namespace stablerep
