#pragma once

#include "stablerep/types.hpp"
#include "stablerep/xi_pushforward.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stablerep {

/// Minimum positive component required of an LP witness.
inline constexpr double kPositivityThreshold = 1e-10;

struct SpanResult {
  bool contains;
  std::vector<double> coefficients;  // tau = sum c_i xi_i (minimum norm)
  double residual;
};

/// Whether tau lies in span supp(lambda_1); the span of an empty measure is {0}.
SpanResult span_contains(const SphericalMeasure& lambda1, const Vec& tau);

struct PositiveCombination {
  bool exists;
  double min_component;  // LP optimum of min_i p_i
  std::vector<double> p;  // sum p_i = 1, sum p_i xi_i = 0
  std::vector<double> q;  // p_i / w_i
  bool q_moment_finite;   // int q^{alpha/(alpha-1)} d lambda_1 < inf; always true for finite lists
};

/// Existence of strictly positive p with sum p_i xi_i = 0, decided by
///   maximize t  s.t.  sum p_i xi_i = 0, sum p_i = 1, p_i >= t.
/// Verdict is true when the optimum exceeds kPositivityThreshold.
PositiveCombination positive_combination_exists(const std::vector<UnitVector>& directions,
                                                const std::vector<double>& weights);

enum class AlphaCase { Below1, Equal1, Above1 };

std::string to_string(AlphaCase c);

struct RepCertificate {
  bool representable;
  AlphaCase alpha_case;
  /// Equal1: span coefficients of tau; Above1: q at each spectral atom. Empty otherwise.
  std::vector<double> witness;
  /// Compound Poisson preimage whose push-forward reproduces the law; set when representable.
  std::optional<Triplet> preimage;
  std::string reason;
};

/// Whether a strictly stable law is the law of a shot-noise series with a compound Poisson driver.
RepCertificate series_representable(const StableLaw& s, double tol = kSymbolicTol);

/// Re-checks a certificate: the witness equations and the preimage round trip.
bool verify_certificate(const StableLaw& s, const RepCertificate& cert, double tol = 1e-10);

}  // namespace stablerep
