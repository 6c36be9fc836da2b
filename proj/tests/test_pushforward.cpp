#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stablerep/domain_gate.hpp"
#include "stablerep/levy_core.hpp"
#include "stablerep/xi_pushforward.hpp"
#include "support.hpp"

#include <array>
#include <cmath>
#include <numbers>

using namespace stablerep;
using namespace testsupport;

namespace {

constexpr double kLog2 = 0.693147180559945309417232121458;

AtomicMeasure atoms1(std::initializer_list<std::pair<double, double>> xs) {
  AtomicMeasure nu(1);
  for (const auto& [x, m] : xs) nu.add(vec1(x), m);
  return nu;
}

double weight_at(const StableLaw& s, const Vec& dir) {
  for (const auto& a : s.spectral) {
    if ((a.direction.coords() - dir).lpNorm<Eigen::Infinity>() < 1e-12) return a.weight;
  }
  return 0.0;
}

Centering zero_flavor(double alpha) { return alpha > 1.0 ? Centering::Mean : Centering::Drift; }

}  // namespace

TEST_CASE("spectral constants against high-precision values") {
  // |Gamma(-a) cos(pi a / 2)| evaluated with 30-digit arithmetic.
  const std::array<std::pair<double, double>, 6> golden{{{0.3, 3.85525256715492041785850249662},
                                                         {0.5, 2.50662827463100050241576528481},
                                                         {0.8, 1.77331090690874603157553270603},
                                                         {1.2, 1.49902819540582801260664652486},
                                                         {1.5, 1.67108551642066700161051018987},
                                                         {1.9, 5.49495943399835073495070256462}}};
  for (const auto& [alpha, value] : golden) {
    CHECK(std::abs(spectral_constant(alpha).value / value - 1.0) < 1e-12);
  }
  CHECK(spectral_constant(1.0).value == std::numbers::pi / 2.0);
  CHECK(std::abs(gamma_negative(0.5) + 2.0 * std::sqrt(std::numbers::pi)) < 1e-14);
  CHECK(std::abs(gamma_negative(1.5) - std::sqrt(std::numbers::pi) / 0.75) < 1e-14);
  CHECK_THROWS_AS(gamma_negative(1.0), InvalidArgument);
}

TEST_CASE("pushforward_law: worked values") {
  const StableLaw a = pushforward_law(0.5, Triplet{atoms1({{1.0, 1.0}}), vec1(0.0), Centering::Drift});
  REQUIRE(a.spectral.size() == 1);
  CHECK(std::abs(a.spectral[0].weight - 0.5 * std::sqrt(2.0 * std::numbers::pi)) < 1e-15);
  CHECK(a.tau[0] == 0.0);

  const StableLaw b = pushforward_law(1.0, Triplet{atoms1({{1.0, 1.0}, {-1.0, 1.0}}), vec1(0.0), Centering::Drift});
  REQUIRE(b.spectral.size() == 2);
  CHECK(weight_at(b, vec1(1.0)) == std::numbers::pi / 2.0);
  CHECK(weight_at(b, vec1(-1.0)) == std::numbers::pi / 2.0);
  CHECK(b.tau[0] == 0.0);

  for (double alpha : {0.4, 1.0, 1.6}) {
    const StableLaw z = pushforward_law(alpha, Triplet::point_mass_at_zero(2));
    CHECK(z.spectral.empty());
    CHECK(z.tau.isZero(0.0));
  }

  CHECK_THROWS_AS(pushforward_law(1.0, Triplet{atoms1({{1.0, 1.0}}), vec1(0.0), Centering::Drift}), DomainError);
}

TEST_CASE("push-forward characteristic function matches direct integration") {
  // Exponents of int_0^inf psi(t^{-1/alpha} z) dt, computed by 30-digit quadrature. The symmetric
  // alpha = 1.5 case uses int (1 - cos s) s^{-1-alpha} ds = -Gamma(-alpha) cos(pi alpha / 2) instead,
  // since the oscillatory tail quadrature loses about 1e-9 there.
  struct Case {
    double alpha;
    AtomicMeasure nu;
    Centering flavor;
    double z;
    std::complex<double> exponent;
  };
  const double r = std::sqrt(2.0);
  const std::vector<Case> cases{
      {0.5, atoms1({{1.0, 1.0}}), Centering::Drift, 1.0, {-1.2533141373155002512, 1.2533141373155002477}},
      {0.5, atoms1({{1.0, 1.0}}), Centering::Drift, -2.5, {-1.9816636488030055067, -1.9816636488030054978}},
      {1.5, atoms1({{1.0, 1.0}, {-1.0, 1.0}}), Centering::Mean, 1.0, {-5.0132565492620010048, 0.0}},
      {1.2, atoms1({{0.5, 2.0}, {-4.0, 0.25}}), Centering::Mean, 1.3, {-5.3973276234894678623, 3.4052744146813490251}},
      {1.0, atoms1({{1.0 / r, r}, {-r, 1.0 / r}}), Centering::Drift, 2.0, {-6.2831853071795864763, 1.3862943611198906188}},
      {0.3, atoms1({{2.0, 1.5}}), Centering::Drift, 0.7, {-1.919127194352832685, 0.97784414633960907203}},
      {1.0, atoms1({{2.0, 1.0}, {-1.0, 2.0}}), Centering::Drift, 1.7, {-10.681415022205296731, -2.3567004139038139905}},
  };
  for (const auto& c : cases) {
    const StableLaw s = pushforward_law(c.alpha, Triplet{c.nu, vec1(0.0), c.flavor});
    const std::complex<double> got = cf_stable(s, vec1(c.z));
    CHECK(std::abs(got - std::exp(c.exponent)) < 1e-12);
  }
}

TEST_CASE("pushforward_triplet: worked values") {
  const Triplet a = pushforward_triplet(0.5, Triplet{atoms1({{1.0, 1.0}}), vec1(0.0), Centering::Drift});
  CHECK(a.flavor == Centering::Raw);
  CHECK(a.gamma[0] == doctest::Approx(1.0).epsilon(1e-15));
  const auto& pa = std::get<PolarMeasure>(a.nu);
  REQUIRE(pa.components().size() == 1);
  CHECK(pa.components()[0].weight == 0.5);
  CHECK(std::get<PowerLaw>(pa.components()[0].radial).alpha == 0.5);

  const Triplet b = pushforward_triplet(1.5, Triplet{atoms1({{1.0, 1.0}, {-1.0, 1.0}}), vec1(0.0), Centering::Mean});
  const auto& pb = std::get<PolarMeasure>(b.nu);
  REQUIRE(pb.components().size() == 2);
  CHECK(pb.components()[0].weight == 1.5);
  CHECK(pb.components()[1].weight == 1.5);
  CHECK(b.gamma[0] == 0.0);

  const Triplet c = pushforward_triplet(0.7, Triplet::point_mass_at_zero(2));
  CHECK(is_zero_measure(c.nu));
  CHECK(c.gamma.isZero(0.0));
}

TEST_CASE("pushforward_triplet is drift-free below 1 and mean-free above 1") {
  Gen g(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const double alpha = g.coin() ? g.uniform(0.1, 0.95) : g.uniform(1.05, 1.95);
    const Triplet t{g.zero_mean_atomic(d, 3), Vec::Zero(d), zero_flavor(alpha)};
    const Triplet out = pushforward_triplet(alpha, t);
    const Triplet centered = convert_centering(out, zero_flavor(alpha));
    CHECK(centered.gamma.lpNorm<Eigen::Infinity>() < 1e-12 * (1.0 + out.gamma.norm()));
  }
}

TEST_CASE("preimage: worked values") {
  const StableLaw half{0.5, {{UnitVector(vec1(1.0)), 1.0}}, vec1(0.0)};
  const Triplet a = preimage(0.5, half);
  CHECK(a.flavor == Centering::Drift);
  const auto& na = std::get<AtomicMeasure>(a.nu);
  REQUIRE(na.atoms().size() == 1);
  CHECK(na.atoms()[0].point[0] == 1.0);
  CHECK(std::abs(na.atoms()[0].mass - 0.797884560802865355879892119869) < 1e-15);

  const StableLaw sym{1.5, {{UnitVector(vec2(1.0, 0.0)), 1.0}, {UnitVector(vec2(-1.0, 0.0)), 1.0}}, Vec::Zero(2)};
  const Triplet b = preimage(1.5, sym);
  CHECK(b.flavor == Centering::Mean);
  for (const auto& at : std::get<AtomicMeasure>(b.nu).atoms()) {
    CHECK(std::abs(at.mass - 0.398942280401432677939946059934) < 1e-15);
  }

  const Triplet c = preimage(0.9, StableLaw{0.9, {}, Vec::Zero(3)});
  CHECK(is_zero_measure(c.nu));
  CHECK(c.gamma.isZero(0.0));

  CHECK_THROWS_AS(preimage(0.5, StableLaw{0.5, {{UnitVector(vec1(1.0)), 1.0}}, vec1(0.1)}), DomainError);
  CHECK_THROWS_AS(preimage(1.0, StableLaw{1.0, {}, vec1(0.0)}), InvalidArgument);
}

TEST_CASE("preimage round trip for alpha != 1") {
  Gen g(67);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const double alpha = g.coin() ? g.uniform(0.05, 0.98) : g.uniform(1.02, 1.98);
    const StableLaw s{alpha, g.spherical(d, 5), Vec::Zero(d)};
    const Triplet t = preimage(alpha, s);
    CHECK(in_domain(alpha, t).member);
    CHECK(law_discrepancy(pushforward_law(alpha, t), s) <= 1e-10);
  }
}

TEST_CASE("solve_shift: worked values") {
  const SphericalMeasure pm{{UnitVector(vec1(1.0)), 1.0}, {UnitVector(vec1(-1.0)), 1.0}};
  const auto zero = solve_shift(vec1(0.0), pm);
  CHECK(zero == std::vector<double>{0.0, 0.0});
  const auto f = solve_shift(vec1(kLog2), pm);
  REQUIRE(f.size() == 2);
  CHECK(std::abs(f[0] - kLog2 / 2.0) < 1e-15);
  CHECK(std::abs(f[1] + kLog2 / 2.0) < 1e-15);

  const SphericalMeasure e1{{UnitVector(vec2(1.0, 0.0)), 1.0}};
  CHECK_THROWS_WITH_AS(solve_shift(vec2(0.0, 1.0), e1), "shift outside span", DomainError);
  CHECK(solve_shift(Vec::Zero(2), {}).empty());
  CHECK_THROWS_AS(solve_shift(vec2(1.0, 0.0), {}), DomainError);
}

TEST_CASE("solve_shift returns the minimum-norm solution") {
  Gen g(71);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const SphericalMeasure lambda = g.spherical(d, 5);
    Eigen::MatrixXd m(d, static_cast<Eigen::Index>(lambda.size()));
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      m.col(static_cast<Eigen::Index>(i)) = lambda[i].weight * lambda[i].direction.coords();
    }
    const Vec f_true = g.gaussian_vec(m.cols());
    const Vec tau = m * f_true;
    const auto f = solve_shift(tau, lambda);
    const Vec fv = Eigen::Map<const Vec>(f.data(), static_cast<Eigen::Index>(f.size()));
    CHECK((m * fv - tau).norm() < 1e-10 * (1.0 + tau.norm()));
    // Minimum norm: f lies in the row space of m, so it is orthogonal to the null space.
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    const Eigen::MatrixXd null = lu.kernel();
    if (lu.dimensionOfKernel() > 0) CHECK((null.transpose() * fv).norm() < 1e-10 * (1.0 + fv.norm()));
    CHECK(fv.norm() <= f_true.norm() + 1e-12);
  }
}

TEST_CASE("preimage_unit: worked values") {
  const double h = std::numbers::pi / 2.0;
  const SphericalMeasure pm{{UnitVector(vec1(1.0)), h}, {UnitVector(vec1(-1.0)), h}};

  const Triplet a = preimage_unit(StableLaw{1.0, pm, vec1(0.0)});
  const auto& na = std::get<AtomicMeasure>(a.nu);
  REQUIRE(na.atoms().size() == 2);
  CHECK(std::abs(na.atoms()[0].point[0] - 1.0) < 1e-15);
  CHECK(std::abs(na.atoms()[0].mass - 1.0) < 1e-15);
  CHECK(std::abs(na.atoms()[1].point[0] + 1.0) < 1e-15);
  CHECK(std::abs(na.atoms()[1].mass - 1.0) < 1e-15);

  const StableLaw shifted{1.0, pm, vec1(kLog2)};
  const Triplet b = preimage_unit(shifted);
  const auto& nb = std::get<AtomicMeasure>(b.nu);
  REQUIRE(nb.atoms().size() == 2);
  CHECK(std::abs(nb.atoms()[0].point[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(nb.atoms()[0].mass - std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(nb.atoms()[1].point[0] + std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(nb.atoms()[1].mass - 1.0 / std::sqrt(2.0)) < 1e-15);
  const StableLaw back = pushforward_law(1.0, b);
  CHECK(std::abs(back.tau[0] - kLog2) <= 1e-12);
  CHECK(law_discrepancy(back, shifted) <= 1e-12);

  const Triplet c = preimage_unit(StableLaw{1.0, {}, Vec::Zero(2)});
  CHECK(is_zero_measure(c.nu));

  CHECK_THROWS_AS(preimage_unit(StableLaw{1.0, {{UnitVector(vec1(1.0)), 1.0}}, vec1(0.0)}), DomainError);
  const SphericalMeasure e1{{UnitVector(vec2(1.0, 0.0)), 1.0}, {UnitVector(vec2(-1.0, 0.0)), 1.0}};
  CHECK_THROWS_AS(preimage_unit(StableLaw{1.0, e1, vec2(0.0, 1.0)}), DomainError);
}

TEST_CASE("preimage_unit round trip with shifts in the span") {
  Gen g(73);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const SphericalMeasure lambda1 = g.coin() ? g.zero_mean_spherical(d, 4) : g.symmetric_spherical(d, 2);
    Vec tau = Vec::Zero(d);
    if (g.coin()) {
      for (const auto& a : lambda1) tau += g.uniform(-1.0, 1.0) * a.direction.coords();
    }
    const StableLaw s{1.0, lambda1, tau};
    REQUIRE(is_strictly_stable(s));
    const Triplet t = preimage_unit(s);
    CHECK(in_domain(1.0, t).member);
    CHECK(law_discrepancy(pushforward_law(1.0, t), s) <= 1e-10);
  }
}

TEST_CASE("scaling the Levy measure scales the law") {
  Gen g(79);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const double alpha = std::array<double, 3>{0.6, 1.0, 1.4}[g.integer(0, 2)];
    const AtomicMeasure nu = g.zero_mean_atomic(d, 3);
    const double c = g.uniform(0.1, 10.0);
    const StableLaw base = pushforward_law(alpha, Triplet{nu, Vec::Zero(d), zero_flavor(alpha)});
    const StableLaw scaled = pushforward_law(alpha, Triplet{nu.scaled(c), Vec::Zero(d), zero_flavor(alpha)});
    StableLaw expected = base;
    for (auto& a : expected.spectral) a.weight *= c;
    expected.tau *= c;
    CHECK(law_discrepancy(scaled, expected) <= 1e-10 * (1.0 + c));
  }
}

TEST_CASE("sphere-supported measures are recovered from their law") {
  Gen g(83);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const double alpha = g.coin() ? g.uniform(0.1, 0.9) : g.uniform(1.1, 1.9);
    AtomicMeasure nu(d);
    const SphericalMeasure dirs = alpha > 1.0 ? g.zero_mean_spherical(d, 4) : g.spherical(d, 4);
    for (const auto& a : dirs) nu.add(a.direction.coords(), a.weight);
    const StableLaw s = pushforward_law(alpha, Triplet{nu, Vec::Zero(d), zero_flavor(alpha)});
    // lambda_1 = alpha C(alpha) nu on the sphere.
    const double k = alpha * spectral_constant(alpha).value;
    StableLaw expected{alpha, {}, Vec::Zero(d)};
    for (const auto& a : nu.atoms()) expected.spectral.push_back({UnitVector::normalized(a.point), k * a.mass});
    CHECK(law_discrepancy(s, expected) <= 1e-10 * k * (1.0 + nu.total_mass()));
    const Triplet pre = preimage(alpha, s);
    const auto& back = std::get<AtomicMeasure>(pre.nu);
    const AtomicMeasure merged = reconstruct(polar_decompose(nu));
    double recovered = 0.0;
    for (const auto& b : back.atoms()) recovered += b.mass;
    CHECK(std::abs(recovered - merged.total_mass()) < 1e-10 * (1.0 + recovered));
  }
}

TEST_CASE("noninjective_pair: worked values") {
  const SphericalMeasure pm{{UnitVector(vec1(1.0)), 1.0}, {UnitVector(vec1(-1.0)), 1.0}};
  const auto [t1, t2] = noninjective_pair(pm);
  const auto& n1 = std::get<AtomicMeasure>(t1.nu).atoms();
  const auto& n2 = std::get<AtomicMeasure>(t2.nu).atoms();
  REQUIRE(n1.size() == 2);
  REQUIRE(n2.size() == 2);
  CHECK(n1[0].point[0] == 1.0);
  CHECK(n1[0].mass == 1.0);
  CHECK(n2[0].point[0] == 2.0);
  CHECK(n2[0].mass == 0.5);
  CHECK(n2[1].point[0] == -2.0);
  const StableLaw l1 = pushforward_law(1.0, t1), l2 = pushforward_law(1.0, t2);
  CHECK(law_discrepancy(l1, l2) <= 1e-10);
  CHECK(std::abs(weight_at(l1, vec1(1.0)) - std::numbers::pi / 2.0) < 1e-15);
  CHECK(l2.tau[0] == 0.0);

  const SphericalMeasure e2{{UnitVector(vec2(0.0, 1.0)), 3.0}, {UnitVector(vec2(0.0, -1.0)), 3.0}};
  const auto [u1, u2] = noninjective_pair(e2);
  CHECK(law_discrepancy(pushforward_law(1.0, u1), pushforward_law(1.0, u2)) <= 1e-10);

  CHECK_THROWS_AS(noninjective_pair({{UnitVector(vec1(1.0)), 1.0}}), DomainError);
}

TEST_CASE("non-injectivity holds for every zero-mean spherical measure") {
  Gen g(89);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const auto [t1, t2] = noninjective_pair(g.zero_mean_spherical(d, 4), 1e-12);
    CHECK(law_discrepancy(pushforward_law(1.0, t1), pushforward_law(1.0, t2)) <= 1e-10);
    const auto& a = std::get<AtomicMeasure>(t1.nu).atoms();
    const auto& b = std::get<AtomicMeasure>(t2.nu).atoms();
    CHECK(a.front().point != b.front().point);
  }
}

TEST_CASE("push-forward laws are strictly stable") {
  Gen g(97);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index d = g.integer(1, 3);
    const double alpha = std::array<double, 5>{0.3, 0.7, 1.0, 1.3, 1.8}[g.integer(0, 4)];
    const StableLaw s = pushforward_law(alpha, Triplet{g.zero_mean_atomic(d, 3), Vec::Zero(d), zero_flavor(alpha)});
    CHECK(is_strictly_stable(s, 1e-12));
    const double k = std::pow(2.0, 1.0 / alpha);
    for (int i = 0; i < 4; ++i) {
      const Vec z = g.gaussian_vec(d) * 0.7;
      const auto phi = cf_stable(s, z);
      CHECK(std::abs(cf_stable(s, k * z) - phi * phi) < 1e-10);
      const auto half = cf_stable(s, z / k);
      CHECK(std::abs(phi - half * half) < 1e-10);
    }
  }
}
