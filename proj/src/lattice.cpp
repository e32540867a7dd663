#include "latcell/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latcell {

namespace {

bool all_finite(const Mat& m) {
  return m.allFinite();
}

bool lex_less(const CoeffVec& a, const CoeffVec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

}  // namespace

Lattice make_lattice(const Mat& basis, double rank_tol) {
  if (basis.rows() == 0 || basis.cols() == 0)
    throw Error("lattice basis must have positive dimension");
  if (basis.rows() != basis.cols())
    throw Error("lattice basis must be square (full rank lattices only)");
  if (!all_finite(basis))
    throw NonFiniteError("lattice basis has non-finite entries");

  const int n = static_cast<int>(basis.rows());
  Eigen::JacobiSVD<Mat> svd(basis);
  const Vec& sv = svd.singularValues();
  if (sv[n - 1] <= rank_tol * sv[0])
    throw RankDeficientError("basis is rank deficient (singular value ratio " +
                             std::to_string(sv[n - 1] / sv[0]) + ")");

  Lattice lat;
  lat.dim = n;
  lat.basis = basis;
  lat.gram = basis * basis.transpose();
  lat.det = sv.prod();
  lat.basis_norm_max = basis.rowwise().norm().maxCoeff();
  lat.basis_inv = basis.inverse();
  return lat;
}

LatticeVector lattice_vector(const Lattice& lat, const CoeffVec& coeffs) {
  LatticeVector v;
  v.coeffs = coeffs;
  v.point = lat.basis.transpose() * coeffs.cast<double>();
  v.norm = v.point.norm();
  return v;
}

std::pair<LatticeVector, Vec> decompose_fundamental(const Lattice& lat, const Vec& x) {
  if (!x.allFinite()) throw NonFiniteError("decompose_fundamental: non-finite point");
  if (x.size() != lat.dim) throw Error("decompose_fundamental: dimension mismatch");

  Vec beta = lat.basis_inv.transpose() * x;
  CoeffVec floors(lat.dim);
  for (int i = 0; i < lat.dim; ++i)
    floors[i] = static_cast<long long>(std::floor(beta[i]));
  LatticeVector v = lattice_vector(lat, floors);
  Vec y = x - v.point;
  return {std::move(v), std::move(y)};
}

std::vector<LatticeVector> enumerate_in_ball(const Lattice& lat, double radius,
                                             const Config& cfg) {
  if (!(radius > 0.0)) throw Error("enumerate_in_ball: radius must be positive");
  const int n = lat.dim;
  const double reach = radius + cfg.ball_tol;

  // Coefficient box from the dual bound |a_i| <= reach * ||col_i(basis^-1)||.
  std::vector<long long> bound(n);
  long double count = 1.0L;
  for (int i = 0; i < n; ++i) {
    bound[i] = static_cast<long long>(std::floor(reach * lat.basis_inv.col(i).norm() + 1e-12));
    count *= static_cast<long double>(2 * bound[i] + 1);
  }
  if (count > static_cast<long double>(cfg.enum_budget))
    throw BudgetExceededError("enumerate_in_ball: candidate box of " +
                              std::to_string(static_cast<double>(count)) +
                              " tuples exceeds budget " + std::to_string(cfg.enum_budget));

  std::vector<LatticeVector> out;
  CoeffVec a(n);
  for (int i = 0; i < n; ++i) a[i] = -bound[i];
  Vec point(n);
  while (true) {
    bool zero = true;
    for (int i = 0; i < n; ++i)
      if (a[i] != 0) { zero = false; break; }
    if (!zero) {
      point.setZero();
      for (int i = 0; i < n; ++i)
        if (a[i] != 0) point += static_cast<double>(a[i]) * lat.basis.row(i).transpose();
      double nrm = point.norm();
      if (nrm <= reach) {
        LatticeVector v;
        v.coeffs = a;
        v.point = point;
        v.norm = nrm;
        out.push_back(std::move(v));
      }
    }
    // odometer increment
    int pos = n - 1;
    while (pos >= 0 && a[pos] == bound[pos]) {
      a[pos] = -bound[pos];
      --pos;
    }
    if (pos < 0) break;
    ++a[pos];
  }

  std::sort(out.begin(), out.end(), [](const LatticeVector& x, const LatticeVector& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return lex_less(x.coeffs, y.coeffs);
  });
  return out;
}

LatticeVector shortest_vector(const Lattice& lat, const Config& cfg) {
  const double r_min = lat.basis.rowwise().norm().minCoeff();
  std::vector<LatticeVector> ball = enumerate_in_ball(lat, r_min, cfg);
  // Nonempty: the shortest basis row itself is in the ball.
  double best = ball.front().norm;
  for (const auto& v : ball) best = std::min(best, v.norm);
  const LatticeVector* pick = nullptr;
  for (const auto& v : ball) {
    if (v.norm > best + cfg.ball_tol) continue;
    if (pick == nullptr || lex_less(v.coeffs, pick->coeffs)) pick = &v;
  }
  return *pick;
}

ClosestResult closest_vector(const Lattice& lat, const Vec& x, const Config& cfg) {
  if (!x.allFinite()) throw NonFiniteError("closest_vector: non-finite point");
  if (x.size() != lat.dim) throw Error("closest_vector: dimension mismatch");
  const int n = lat.dim;

  Vec beta = lat.basis_inv.transpose() * x;
  CoeffVec center(n);
  for (int i = 0; i < n; ++i) center[i] = std::llround(beta[i]);
  Vec p0 = lat.basis.transpose() * center.cast<double>();
  const double d0 = (x - p0).norm();

  // Offset box; see header for the 2*d0 bound.
  std::vector<long long> bound(n);
  long double count = 1.0L;
  for (int i = 0; i < n; ++i) {
    bound[i] = static_cast<long long>(std::floor(2.0 * d0 * lat.basis_inv.col(i).norm() + 1e-9));
    count *= static_cast<long double>(2 * bound[i] + 1);
  }
  if (count > static_cast<long double>(cfg.enum_budget))
    throw BudgetExceededError("closest_vector: search box exceeds budget");

  CoeffVec off(n), best_coeffs = center;
  for (int i = 0; i < n; ++i) off[i] = -bound[i];
  double best_d2 = (x - p0).squaredNorm();
  Vec point(n), diff(n);
  CoeffVec cand(n);
  while (true) {
    cand = center + off;
    point.setZero();
    for (int i = 0; i < n; ++i)
      if (cand[i] != 0) point += static_cast<double>(cand[i]) * lat.basis.row(i).transpose();
    diff = x - point;
    double d2 = diff.squaredNorm();
    double tie = 1e-12 * (1.0 + std::min(d2, best_d2));
    if (d2 < best_d2 - tie ||
        (d2 <= best_d2 + tie && lex_less(cand, best_coeffs))) {
      best_d2 = d2;
      best_coeffs = cand;
    }
    int pos = n - 1;
    while (pos >= 0 && off[pos] == bound[pos]) {
      off[pos] = -bound[pos];
      --pos;
    }
    if (pos < 0) break;
    ++off[pos];
  }

  ClosestResult res;
  res.vector = lattice_vector(lat, best_coeffs);
  res.dist = (x - res.vector.point).norm();
  return res;
}

}  // namespace latcell
