#include "stablerep/simplex_lp.hpp"

#include "stablerep/types.hpp"

#include <limits>
#include <vector>

namespace stablerep {
namespace {

class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b)
      : rows_(a.rows()), vars_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1), z_(a.cols() + a.rows() + 1) {
    t_.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = b[i] < 0.0 ? -1.0 : 1.0;
      t_.row(i).head(vars_) = sign * a.row(i);
      t_(i, vars_ + i) = 1.0;
      t_(i, rhs()) = sign * b[i];
      basis_.push_back(vars_ + i);
    }
  }

  Eigen::Index rhs() const { return vars_ + rows_; }
  bool is_artificial(Eigen::Index j) const { return j >= vars_; }

  /// z_j = sum_i cost(basis_i) t_ij - cost_j.
  void set_costs(const Eigen::VectorXd& cost) {
    cost_ = cost;
    z_.setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) z_ += cost_[basis_[i]] * t_.row(i).transpose();
    z_.head(cost_.size()) -= cost_;
  }

  double objective() const { return z_[rhs()]; }

  /// Bland's rule simplex on columns [0, allowed). Returns false when unbounded.
  bool optimize(Eigen::Index allowed, double tol) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (z_[j] < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        const double piv = t_(i, enter);
        if (piv <= tol) continue;
        const double ratio = t_(i, rhs()) / piv;
        if (leave < 0 || ratio < best - tol) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tol && basis_[i] < basis_[leave]) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  /// Replaces artificial basics by structural columns where possible.
  void drive_out_artificials(double tol) {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (Eigen::Index j = 0; j < vars_; ++j) {
        if (std::abs(t_(i, j)) > tol) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(vars_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (!is_artificial(basis_[i])) x[basis_[i]] = t_(i, rhs());
    }
    return x;
  }

 private:
  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    if (z_[c] != 0.0) z_ -= z_[c] * t_.row(r).transpose();
    basis_[r] = c;
  }

  Eigen::Index rows_;
  Eigen::Index vars_;
  Eigen::MatrixXd t_;
  Eigen::VectorXd z_;
  Eigen::VectorXd cost_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult solve_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             double tol) {
  if (a.rows() != b.size() || a.cols() != c.size()) {
    throw InvalidArgument("solve_standard_form: inconsistent dimensions");
  }
  const Eigen::Index m = a.rows(), n = a.cols();
  Tableau tab(a, b);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setConstant(-1.0);
  tab.set_costs(phase1);
  tab.optimize(n + m, tol);
  const double infeasibility = -tab.objective();
  if (infeasibility > tol * (1.0 + b.cwiseAbs().sum()) * 1e3) {
    return {LpStatus::Infeasible, 0.0, Eigen::VectorXd::Zero(n)};
  }
  tab.drive_out_artificials(tol);

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  tab.set_costs(phase2);
  if (!tab.optimize(n, tol)) {
    return {LpStatus::Unbounded, std::numeric_limits<double>::infinity(), tab.solution()};
  }
  return {LpStatus::Optimal, tab.objective(), tab.solution()};
}

}  // namespace stablerep
