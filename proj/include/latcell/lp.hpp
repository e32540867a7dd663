#pragma once

#include <Eigen/Dense>

#include "latcell/errors.hpp"

namespace latcell::detail {

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
};

// Maximizes c.x subject to A x <= b over free x, where b > 0 so the
// origin is strictly feasible and no phase-1 is needed. Dense tableau
// simplex with Bland's rule; throws DegenerateLPError if the iteration
// cap is hit.
LpResult maximize_linear(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                         const Eigen::VectorXd& c);

}  // namespace latcell::detail
