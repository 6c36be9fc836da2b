#pragma once

#include "stablerep/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stablerep {

/// Stable condition ids used in DomainReport.
namespace condition {
inline constexpr const char* kAlphaMoment = "alpha-moment";
inline constexpr const char* kDriftZero = "drift-zero";
inline constexpr const char* kMeanZero = "mean-zero";
inline constexpr const char* kZeroMeanLevy = "zero-mean-levy";
inline constexpr const char* kXlogLimits = "xlog-limits";
}  // namespace condition

struct Condition {
  std::string id;
  bool passed;
  double value;     // scalar evidence (a norm or a moment; +inf when divergent)
  Vec vector;       // optional vector evidence, empty when unused
  std::string note;
};

struct DomainReport {
  double alpha;
  bool member;
  std::vector<Condition> reasons;

  const Condition* find(const std::string& id) const;
};

/// Membership of mu_(0, nu, gamma) in the domain of the t^{-1/alpha} integral mapping.
///   alpha < 1 : drift form with zero drift, finite alpha-moment
///   alpha = 1 : zero drift and zero Levy mean; reports sum m x log|x|
///   alpha > 1 : mean form with zero mean, finite alpha-moment
/// Power-law measures fail "alpha-moment" with an infinite value.
DomainReport in_domain(double alpha, const Triplet& t, double tol = kSymbolicTol);

struct IteratedDomainReport {
  bool member;
  DomainReport first;
  /// Domain check of the push-forward triplet, present when `first` passed and nu != 0.
  std::optional<DomainReport> second;
  /// int |x|^alpha of the push-forward Levy measure (+inf unless nu = 0).
  double pushforward_alpha_moment;
  std::string mechanism;
};

/// Membership in the domain of the twice-iterated mapping. Only delta_0 passes:
/// the push-forward of any nonzero nu has a power-law radial part and hence an
/// infinite alpha-moment, which is computed rather than assumed.
IteratedDomainReport in_domain_iterated(double alpha, const Triplet& t, double tol = kSymbolicTol);

}  // namespace stablerep
