#pragma once

#include "stablerep/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace testsupport {

/// Grid search over the probability simplex for strictly positive p with sum p_i xi_i = 0,
/// for planar directions given in multiples of 30 degrees.
///
/// Score(p) = min_i p_i - kPenalty |sum p_i xi_i|, maximized over p on the step-1/kSteps grid;
/// feasible iff the maximum exceeds kMargin. For lattice directions with no strictly positive
/// solution there is a lattice normal y with y.xi_i >= 0 and y.xi_j >= 1/2 on the positive
/// ones, so |sum p xi| >= min p / 2 and the score is <= 0 everywhere. Feasible lattice sets
/// have solutions with min p well above the grid step, so some grid point scores positive.
class SimplexGrid {
 public:
  static constexpr int kSteps = 1000;
  static constexpr double kPenalty = 3.0;
  static constexpr double kMargin = 1e-9;

  explicit SimplexGrid(const std::vector<int>& lattice_indices) {
    for (int k : lattice_indices) {
      const double r = k * std::numbers::pi / 6.0;
      x_.push_back(std::cos(r));
      y_.push_back(std::sin(r));
    }
  }

  bool feasible() const {
    switch (x_.size()) {
      case 1: return false;  // p = (1) gives |xi| = 1
      case 2: return best2() > kMargin;
      case 3: return best3() > kMargin;
      case 4: return best4() > kMargin;
      default: return false;
    }
  }

 private:
  double score(const double* p) const {
    double sx = 0.0, sy = 0.0, lo = 1.0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      sx += p[i] * x_[i];
      sy += p[i] * y_[i];
      lo = std::min(lo, p[i]);
    }
    return lo - kPenalty * std::sqrt(sx * sx + sy * sy);
  }

  double best2() const {
    double best = -1e300;
    for (int i = 0; i <= kSteps; ++i) {
      const double p[2] = {i / double(kSteps), (kSteps - i) / double(kSteps)};
      best = std::max(best, score(p));
    }
    return best;
  }

  double best3() const {
    double best = -1e300;
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; i + j <= kSteps; ++j) {
        const double p[3] = {i / double(kSteps), j / double(kSteps), (kSteps - i - j) / double(kSteps)};
        best = std::max(best, score(p));
      }
    }
    return best;
  }

  /// The score is concave in p, so for fixed (p1, p2) an integer ternary search over p3
  /// finds the exact grid maximum along that line.
  double best4() const {
    double best = -1e300;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; i + j <= kSteps; ++j) {
        const int rest = kSteps - i - j;
        auto f = [&](int k) {
          const double p[4] = {i / double(kSteps), j / double(kSteps), k / double(kSteps),
                               (rest - k) / double(kSteps)};
          return score(p);
        };
        int lo = 0, hi = rest;
        while (hi - lo > 2) {
          const int m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
          if (f(m1) < f(m2)) {
            lo = m1 + 1;
          } else {
            hi = m2;
          }
        }
        for (int k = lo; k <= hi; ++k) best = std::max(best, f(k));
      }
    }
    return best;
  }

  std::vector<double> x_, y_;
};

/// Subsets of the 12 lattice directions of size 1..max_size, one representative per rotation class.
inline std::vector<std::vector<int>> lattice_subsets(int max_size) {
  std::vector<std::vector<int>> out;
  auto canonical = [](const std::vector<int>& s) {
    std::vector<int> best = s;
    for (int r = 1; r < 12; ++r) {
      std::vector<int> t;
      for (int k : s) t.push_back((k + r) % 12);
      std::sort(t.begin(), t.end());
      best = std::min(best, t);
    }
    return best == s;
  };
  for (int mask = 1; mask < (1 << 12); ++mask) {
    std::vector<int> s;
    for (int k = 0; k < 12; ++k) {
      if (mask & (1 << k)) s.push_back(k);
    }
    if (static_cast<int>(s.size()) <= max_size && canonical(s)) out.push_back(s);
  }
  return out;
}

}  // namespace testsupport
