#pragma once

#include <Eigen/Dense>

namespace stablerep {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  double objective;
  Eigen::VectorXd x;
};

/// maximize c.x subject to A x = b, x >= 0.
///
/// Dense two-phase simplex with Bland's rule, intended for programs with few rows and
/// many columns. Redundant equality rows are tolerated.
LpResult solve_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             double tol = 1e-12);

}  // namespace stablerep
