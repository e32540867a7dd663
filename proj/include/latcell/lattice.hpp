#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "latcell/config.hpp"
#include "latcell/errors.hpp"

namespace latcell {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CoeffVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

/// A full-rank lattice in R^n, stored through one chosen basis.
/// Rows of `basis` are the basis vectors u_1..u_n. Immutable after
/// construction; all operations on it are pure functions.
struct Lattice {
  int dim = 0;            // n
  Mat basis;              // row i is u_i
  Mat gram;               // gram(i,j) = <u_i, u_j>
  double det = 0.0;       // lattice determinant, sqrt(det(gram))
  double basis_norm_max = 0.0;  // r = max_i ||u_i||
  Mat basis_inv;          // cached inverse of basis (coefficient solves)
};

/// A lattice element: integer coefficients plus the embedded point
/// point = sum_i coeffs[i] * u_i.
struct LatticeVector {
  CoeffVec coeffs;
  Vec point;
  double norm = 0.0;
};

struct ClosestResult {
  LatticeVector vector;
  double dist = 0.0;
};

/// Validates and builds a lattice from a square basis matrix (rows are
/// basis vectors). Throws NonFiniteError on NaN/Inf entries and
/// RankDeficientError when the smallest singular value is at most
/// rank_tol times the largest.
Lattice make_lattice(const Mat& basis, double rank_tol = Config{}.rank_tol);

/// The lattice element with the given integer coefficients.
LatticeVector lattice_vector(const Lattice& lat, const CoeffVec& coeffs);

/// Unique decomposition x = v + y with v in the lattice and y in the
/// fundamental parallelepiped: y = sum {b_i} u_i with all fractional
/// parts in [0,1), where b solves x = sum b_i u_i and v has
/// coefficients floor(b_i).
std::pair<LatticeVector, Vec> decompose_fundamental(const Lattice& lat, const Vec& x);

/// All nonzero lattice vectors with ||v|| <= R + ball_tol, sorted by
/// (norm, lexicographic coefficients). The output is closed under
/// negation. Candidate coefficients are drawn from the box
/// |a_i| <= R * ||col_i(basis^-1)||, which is exact: a = basis^-T v, so
/// a_i = <col_i(basis^-1), v> and Cauchy-Schwarz bounds each
/// coordinate. Throws BudgetExceededError when the box holds more than
/// cfg.enum_budget tuples.
std::vector<LatticeVector> enumerate_in_ball(const Lattice& lat, double radius,
                                             const Config& cfg = {});

/// A shortest nonzero lattice vector; ties (norms within ball_tol)
/// broken by lexicographically smallest coefficients.
LatticeVector shortest_vector(const Lattice& lat, const Config& cfg = {});

/// Nearest lattice point to x and its distance. Searches integer
/// coefficient offsets d around c = round(basis^-T x): writing v0 for
/// the point at c and d0 = ||x - v0||, any optimal v* satisfies
/// ||v* - v0|| <= ||v* - x|| + ||x - v0|| <= 2 d0, so the offset is
/// bounded by |d_i| <= 2 d0 ||col_i(basis^-1)|| and the search box
/// provably contains the optimum. Ties broken by lexicographically
/// smallest coefficients.
ClosestResult closest_vector(const Lattice& lat, const Vec& x, const Config& cfg = {});

}  // namespace latcell
