#pragma once

#include "stablerep/domain_gate.hpp"
#include "stablerep/types.hpp"

#include <utility>
#include <vector>

namespace stablerep {

/// Finite discrete measure on the unit sphere.
using SphericalMeasure = std::vector<SpectralAtom>;

/// Factor between the push-forward spherical measure lambda and the spectral measure lambda_1.
struct SpectralConstant {
  double alpha;
  double value;
};

/// Gamma at a negative non-integer argument -alpha, alpha in (0,2) \ {1}, via
/// Gamma(-alpha) = Gamma(2 - alpha) / ((-alpha)(1 - alpha)); Gamma(2 - alpha) is std::tgamma.
double gamma_negative(double alpha);

/// |Gamma(-alpha) cos(pi alpha / 2)| for alpha != 1, pi/2 for alpha = 1.
SpectralConstant spectral_constant(double alpha);

/// Merges atoms whose directions agree within `snap` and drops weights below 1e-15.
SphericalMeasure aggregate_directions(const SphericalMeasure& atoms, double snap = kSymbolicTol);

/// Largest weight or shift mismatch between two stable laws after aggregating directions.
/// Returns +inf when alphas, dimensions or supports differ.
double law_discrepancy(const StableLaw& a, const StableLaw& b, double snap = 1e-9);

struct PushforwardCertificate {
  StableLaw law;
  SpectralConstant constant;
  SphericalMeasure lambda;           // alpha * sum m |x|^alpha per direction
  std::vector<Vec> tau_terms;        // -m x log|x| per atom (alpha = 1 only)
  DomainReport domain;
};

/// Law of int_0^inf t^{-1/alpha} dX_t for a triplet in the domain (throws DomainError otherwise).
StableLaw pushforward_law(double alpha, const Triplet& t, double tol = kSymbolicTol);

/// pushforward_law together with the terms it was assembled from.
PushforwardCertificate pushforward_certificate(double alpha, const Triplet& t,
                                               double tol = kSymbolicTol);

/// Raw triplet of the push-forward: power-law polar Levy measure lambda(dxi) r^{-alpha-1} dr,
/// gamma = sum lambda xi / (1 - alpha) for alpha != 1 and tau for alpha = 1.
Triplet pushforward_triplet(double alpha, const Triplet& t, double tol = kSymbolicTol);

/// Sphere-supported preimage of a strictly stable law, alpha != 1.
Triplet preimage(double alpha, const StableLaw& s, double tol = kSymbolicTol);

/// Minimum-norm f with sum_i xi_i f_i w_i = tau. Throws DomainError("shift outside span")
/// when the residual exceeds 1e-9 (1 + |tau|).
std::vector<double> solve_shift(const Vec& tau, const SphericalMeasure& lambda);

/// Preimage of a strictly 1-stable law whose shift lies in span supp(lambda_1).
Triplet preimage_unit(const StableLaw& s, double tol = kSymbolicTol);

/// Two distinct triplets with polar parts (lambda, delta_1) and (lambda, delta_2 / 2) that share
/// the same alpha = 1 push-forward. Requires zero spherical mean.
std::pair<Triplet, Triplet> noninjective_pair(const SphericalMeasure& lambda,
                                              double tol = kSymbolicTol);

}  // namespace stablerep
