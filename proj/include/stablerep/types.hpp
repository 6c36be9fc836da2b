#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace stablerep {

using Vec = Eigen::VectorXd;

/// Default tolerance for symbolic (closed-form) paths.
inline constexpr double kSymbolicTol = 1e-12;

/// Thrown when a value violates a type invariant or an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input lies outside the domain of a mapping.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point on the unit sphere S of R^d.
class UnitVector {
 public:
  /// Accepts `coords` only if its Euclidean norm is 1 within `tol`.
  explicit UnitVector(Vec coords, double tol = kSymbolicTol);

  /// Returns x / |x|; x must be nonzero.
  static UnitVector normalized(const Vec& x);

  const Vec& coords() const { return coords_; }
  Eigen::Index dim() const { return coords_.size(); }

 private:
  struct Unchecked {};
  UnitVector(Vec coords, Unchecked) : coords_(std::move(coords)) {}
  Vec coords_;
};

struct Atom {
  Vec point;
  double mass;
};

/// Finite atomic measure on R^d \ {0}.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(Eigen::Index dim) : dim_(dim) { check_dim(dim); }
  AtomicMeasure(Eigen::Index dim, std::vector<Atom> atoms);

  void add(Vec point, double mass);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  double total_mass() const;

  AtomicMeasure scaled(double c) const;

 private:
  static void check_dim(Eigen::Index dim);
  void check_atom(const Atom& a) const;

  Eigen::Index dim_;
  std::vector<Atom> atoms_;
};

struct RadialAtom {
  double r;
  double p;
};

/// Radial density r^{-alpha-1} dr on (0, inf).
struct PowerLaw {
  double alpha;
};

using RadialPart = std::variant<std::vector<RadialAtom>, PowerLaw>;

struct PolarComponent {
  UnitVector direction;
  double weight;
  RadialPart radial;
};

/// nu(B) = sum_xi weight(xi) * int 1_B(r xi) radial_xi(dr).
class PolarMeasure {
 public:
  explicit PolarMeasure(Eigen::Index dim) : dim_(dim) {}
  PolarMeasure(Eigen::Index dim, std::vector<PolarComponent> components);

  void add(PolarComponent c);

  Eigen::Index dim() const { return dim_; }
  const std::vector<PolarComponent>& components() const { return components_; }
  bool empty() const { return components_.empty(); }
  bool has_power_law() const;

  /// Radial parts given as point masses summing to one.
  bool probability_normalized(double tol = kSymbolicTol) const;

 private:
  Eigen::Index dim_;
  std::vector<PolarComponent> components_;
};

using LevyMeasure = std::variant<AtomicMeasure, PolarMeasure>;

Eigen::Index dim_of(const LevyMeasure& nu);
bool is_zero_measure(const LevyMeasure& nu);

/// Which centering the `gamma` vector of a triplet refers to.
enum class Centering { Raw, Drift, Mean };

std::string to_string(Centering c);
Centering centering_from_string(const std::string& s);

/// Levy-Khintchine data (A = 0, nu, gamma) with the centering of gamma.
struct Triplet {
  LevyMeasure nu;
  Vec gamma;
  Centering flavor = Centering::Raw;

  Eigen::Index dim() const { return gamma.size(); }
  void validate() const;

  /// delta_0 on R^d.
  static Triplet point_mass_at_zero(Eigen::Index dim);
};

struct SpectralAtom {
  UnitVector direction;
  double weight;
};

/// alpha-stable law parametrized by a discrete spectral measure and a shift.
struct StableLaw {
  double alpha;
  std::vector<SpectralAtom> spectral;
  Vec tau;

  Eigen::Index dim() const { return tau.size(); }
  void validate() const;
  Vec spectral_mean() const;
};

}  // namespace stablerep
