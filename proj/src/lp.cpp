#include "latcell/lp.hpp"

#include <vector>

namespace latcell::detail {

// Tableau layout: variables are [x+ (n), x- (n), slacks (m)], so x is
// split into nonnegative parts. The slack basis is feasible because
// b > 0. The z-row carries negated reduced costs; optimality when all
// entries are >= -tol.
LpResult maximize_linear(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int width = 2 * n + m;
  const double tol = 1e-10;

  if (m == 0) {
    // No constraints: anything with c != 0 is unbounded.
    if (c.lpNorm<Eigen::Infinity>() > tol) return {LpStatus::Unbounded, 0.0};
    return {LpStatus::Optimal, 0.0};
  }

  Eigen::MatrixXd T(m, width + 1);
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, n) = -A;
  T.block(0, 2 * n, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.col(width) = b;

  Eigen::VectorXd z = Eigen::VectorXd::Zero(width + 1);
  z.segment(0, n) = -c;
  z.segment(n, n) = c;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * n + i;

  const long iter_cap = 2000L * (width + m) + 10000L;
  for (long iter = 0; iter <= iter_cap; ++iter) {
    // Bland: entering variable is the lowest index with z < -tol.
    int enter = -1;
    for (int j = 0; j < width; ++j) {
      if (z[j] < -tol) { enter = j; break; }
    }
    if (enter < 0) return {LpStatus::Optimal, z[width]};

    // Ratio test; Bland tie-break by lowest basic variable index.
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      double a = T(i, enter);
      if (a <= tol) continue;
      double ratio = T(i, width) / a;
      if (leave < 0 || ratio < best_ratio - tol ||
          (ratio <= best_ratio + tol && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return {LpStatus::Unbounded, 0.0};

    double piv = T(leave, enter);
    T.row(leave) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    double fz = z[enter];
    if (fz != 0.0) z -= fz * T.row(leave).transpose();
    basis[leave] = enter;

    if (iter == iter_cap)
      throw DegenerateLPError("simplex iteration cap hit (degenerate or ill-conditioned LP)");
  }
  throw DegenerateLPError("simplex failed to terminate");
}

}  // namespace latcell::detail
