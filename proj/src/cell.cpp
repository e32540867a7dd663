#include "latcell/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "latcell/lp.hpp"

namespace latcell {

namespace {

bool lex_less(const CoeffVec& a, const CoeffVec& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

bool lex_less_vec(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

Halfspace halfspace_of(const LatticeVector& v) {
  Halfspace h;
  h.normal = v.point;
  h.offset = v.point.squaredNorm();
  h.source = v;
  return h;
}

// Constraint matrix rows 2*v_i and offsets ||v_i||^2 for a halfspace set.
void constraint_rows(const std::vector<const Halfspace*>& hs, Mat& A, Vec& b) {
  const int m = static_cast<int>(hs.size());
  const int n = m > 0 ? static_cast<int>(hs[0]->normal.size()) : 0;
  A.resize(m, n);
  b.resize(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = 2.0 * hs[i]->normal.transpose();
    b[i] = hs[i]->offset;
  }
}

// uniform double in [0,1) from the raw engine, stable across platforms
double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

double relevant_radius(const Lattice& lat) {
  return 2.0 * lat.dim * lat.basis_norm_max;
}

VoronoiCell build_cell_with_radius(const Lattice& lat, double radius, const Config& cfg) {
  VoronoiCell cell;
  cell.lattice = lat;
  cell.cutoff_radius = radius;
  for (auto& v : enumerate_in_ball(lat, radius, cfg))
    cell.halfspaces.push_back(halfspace_of(v));
  return cell;
}

VoronoiCell build_cell(const Lattice& lat, const Config& cfg) {
  return build_cell_with_radius(lat, relevant_radius(lat), cfg);
}

bool contains(const VoronoiCell& cell, const Vec& x, double tol) {
  for (const auto& h : cell.halfspaces) {
    if (2.0 * h.normal.dot(x) > h.offset + tol) return false;
  }
  return true;
}

VoronoiCell prune_redundant(const VoronoiCell& cell, double feas_tol, const Config&) {
  if (cell.pruned) return cell;

  // Canonical representative of each +-v pair: lexicographically larger
  // coefficient vector (first nonzero coefficient positive).
  struct Pair {
    const Halfspace* pos;
    const Halfspace* neg;
    double norm;
  };
  std::vector<Pair> pairs;
  {
    std::map<std::vector<long long>, const Halfspace*> by_coeffs;
    for (const auto& h : cell.halfspaces) {
      std::vector<long long> key(h.source.coeffs.data(),
                                 h.source.coeffs.data() + h.source.coeffs.size());
      by_coeffs.emplace(std::move(key), &h);
    }
    for (const auto& h : cell.halfspaces) {
      CoeffVec negc = -h.source.coeffs;
      if (!lex_less(negc, h.source.coeffs)) continue;  // canonical side only
      auto it = by_coeffs.find(std::vector<long long>(negc.data(), negc.data() + negc.size()));
      if (it == by_coeffs.end())
        throw Error("prune_redundant: halfspace set is not closed under negation");
      pairs.push_back({&h, it->second, h.source.norm});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return lex_less(a.pos->source.coeffs, b.pos->source.coeffs);
  });

  auto lp_max = [](const std::vector<const Halfspace*>& hs, const Vec& normal) {
    Mat A;
    Vec b;
    constraint_rows(hs, A, b);
    return detail::maximize_linear(A, b, 2.0 * normal);
  };

  // Pass 1, ascending norm: drop a pair as soon as the kept set already
  // implies it. Sound because the kept set is a subset of the full set.
  std::vector<Pair> kept;
  std::vector<const Halfspace*> kept_hs;
  for (const Pair& p : pairs) {
    bool keep = true;
    if (!kept_hs.empty()) {
      auto r = lp_max(kept_hs, p.pos->normal);
      keep = (r.status == detail::LpStatus::Unbounded) || (r.value > p.pos->offset + feas_tol);
    }
    if (keep) {
      kept.push_back(p);
      kept_hs.push_back(p.pos);
      kept_hs.push_back(p.neg);
    }
  }

  // Pass 2, descending norm: exact redundancy test against the rest.
  // Removing a redundant pair leaves the point set unchanged, so the
  // surviving set is the unique facet description. Testing against the
  // set without -v is equivalent: that constraint is slack wherever
  // 2 v.x is maximal (the maximum is nonnegative since 0 is feasible).
  std::vector<char> alive(kept.size(), 1);
  for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
    std::vector<const Halfspace*> rest;
    for (size_t j = 0; j < kept.size(); ++j) {
      if (static_cast<int>(j) == i || !alive[j]) continue;
      rest.push_back(kept[j].pos);
      rest.push_back(kept[j].neg);
    }
    if (rest.empty()) continue;
    auto r = lp_max(rest, kept[i].pos->normal);
    bool needed = (r.status == detail::LpStatus::Unbounded) ||
                  (r.value > kept[i].pos->offset + feas_tol);
    if (!needed) alive[i] = 0;
  }

  VoronoiCell out;
  out.lattice = cell.lattice;
  out.cutoff_radius = cell.cutoff_radius;
  out.pruned = true;
  for (size_t i = 0; i < kept.size(); ++i) {
    if (!alive[i]) continue;
    out.halfspaces.push_back(*kept[i].pos);
    out.halfspaces.push_back(*kept[i].neg);
  }
  std::sort(out.halfspaces.begin(), out.halfspaces.end(),
            [](const Halfspace& a, const Halfspace& b) {
              if (a.source.norm != b.source.norm) return a.source.norm < b.source.norm;
              return lex_less(a.source.coeffs, b.source.coeffs);
            });
  return out;
}

std::vector<Vec> vertices(const VoronoiCell& cell, const Config& cfg) {
  if (!cell.pruned) throw Error("vertices: cell must be pruned first");
  const int n = cell.lattice.dim;
  const int m = static_cast<int>(cell.halfspaces.size());
  if (m < n) throw Error("vertices: fewer facets than dimensions");

  // C(m, n) against the budget.
  long double combos = 1.0L;
  for (int i = 0; i < n; ++i) combos = combos * (m - i) / (i + 1);
  if (combos > static_cast<long double>(cfg.vertex_budget))
    throw BudgetExceededError("vertices: facet subset count exceeds budget");

  std::vector<Vec> found;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Mat N(n, n);
  Vec d(n);
  while (true) {
    for (int i = 0; i < n; ++i) {
      N.row(i) = 2.0 * cell.halfspaces[idx[i]].normal.transpose();
      d[i] = cell.halfspaces[idx[i]].offset;
    }
    Eigen::FullPivLU<Mat> lu(N);
    if (lu.isInvertible()) {
      Vec x = lu.solve(d);
      if (contains(cell, x, cfg.feas_tol)) found.push_back(std::move(x));
    }
    // next n-combination of {0..m-1}
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == m - n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }

  std::sort(found.begin(), found.end(), lex_less_vec);
  std::vector<Vec> out;
  for (const Vec& x : found) {
    bool dup = false;
    for (const Vec& y : out) {
      if ((x - y).norm() <= cfg.vertex_tol) { dup = true; break; }
    }
    if (!dup) out.push_back(x);
  }
  return out;
}

VoronoiCell with_vertices(VoronoiCell cell, const Config& cfg) {
  cell.vertices = vertices(cell, cfg);
  return cell;
}

CellRadii radii(const Lattice& lat, const Config& cfg) {
  CellRadii r;
  r.packing = shortest_vector(lat, cfg).norm / 2.0;
  VoronoiCell cell = prune_redundant(build_cell(lat, cfg), cfg.feas_tol, cfg);
  double cover = 0.0;
  for (const Vec& v : vertices(cell, cfg)) cover = std::max(cover, v.norm());
  r.covering = cover;
  return r;
}

namespace {

double exact_volume(const VoronoiCell& cell, const std::vector<Vec>& verts) {
  const int n = cell.lattice.dim;
  if (n == 1) {
    double lo = verts.front()[0], hi = verts.front()[0];
    for (const Vec& v : verts) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    return hi - lo;
  }
  if (n == 2) {
    // shoelace over the angular order around the (interior) origin
    std::vector<Vec> ring = verts;
    std::sort(ring.begin(), ring.end(), [](const Vec& a, const Vec& b) {
      return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    double area = 0.0;
    for (size_t i = 0; i < ring.size(); ++i) {
      const Vec& a = ring[i];
      const Vec& b = ring[(i + 1) % ring.size()];
      area += a[0] * b[1] - a[1] * b[0];
    }
    return std::abs(area) / 2.0;
  }
  // n == 3: cone over each facet polygon, fan-triangulated
  double vol = 0.0;
  for (const auto& h : cell.halfspaces) {
    std::vector<Vec> on_facet;
    for (const Vec& v : verts) {
      if (std::abs(2.0 * h.normal.dot(v) - h.offset) <= 1e-7 * std::max(1.0, h.offset))
        on_facet.push_back(v);
    }
    if (on_facet.size() < 3) continue;
    // order around the facet centroid in an in-plane frame
    Eigen::Vector3d e = Eigen::Vector3d(h.normal).normalized();
    Eigen::Vector3d t1 = e.unitOrthogonal();
    Eigen::Vector3d t2 = e.cross(t1);
    Vec centroid = Vec::Zero(3);
    for (const Vec& v : on_facet) centroid += v;
    centroid /= static_cast<double>(on_facet.size());
    std::sort(on_facet.begin(), on_facet.end(), [&](const Vec& a, const Vec& b) {
      Vec da = a - centroid, db = b - centroid;
      return std::atan2(t2.dot(da), t1.dot(da)) < std::atan2(t2.dot(db), t1.dot(db));
    });
    for (size_t i = 1; i + 1 < on_facet.size(); ++i) {
      Mat tet(3, 3);
      tet.col(0) = on_facet[0];
      tet.col(1) = on_facet[i];
      tet.col(2) = on_facet[i + 1];
      vol += std::abs(tet.determinant()) / 6.0;
    }
  }
  return vol;
}

}  // namespace

VolumeEstimate cell_volume(const VoronoiCell& cell, VolumeMethod method,
                           long long samples, std::uint64_t seed, const Config& cfg) {
  if (!cell.pruned) throw Error("cell_volume: cell must be pruned first");
  const int n = cell.lattice.dim;
  if (method == VolumeMethod::Auto)
    method = (n <= 3) ? VolumeMethod::Exact : VolumeMethod::MonteCarlo;

  VolumeEstimate est;
  est.method = method;
  if (method == VolumeMethod::Exact) {
    if (n > 3) throw Error("cell_volume: exact method supports n <= 3");
    std::vector<Vec> verts = cell.vertices ? *cell.vertices : vertices(cell, cfg);
    est.value = exact_volume(cell, verts);
    return est;
  }

  const double half = n * cell.lattice.basis_norm_max;
  std::mt19937_64 eng(seed);
  Vec x(n);
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    for (int i = 0; i < n; ++i) x[i] = half * (2.0 * u01(eng) - 1.0);
    if (contains(cell, x, cfg.membership_tol)) ++hits;
  }
  const double box = std::pow(2.0 * half, n);
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.value = p * box;
  est.std_error = box * std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(samples));
  est.samples = samples;
  return est;
}

double distance_to_cell(const VoronoiCell& cell, const Vec& p, const Config& cfg) {
  if (!cell.pruned) throw Error("distance_to_cell: cell must be pruned first");
  if (contains(cell, p, cfg.feas_tol)) return 0.0;

  const int n = cell.lattice.dim;
  const int m = static_cast<int>(cell.halfspaces.size());
  double best = std::numeric_limits<double>::infinity();

  // The projection of p is the affine projection onto the span of the
  // active constraints at the projection point, so scanning all
  // independent subsets of size 1..n finds it.
  std::vector<int> idx;
  auto consider = [&](int k) {
    Mat N(k, n);
    Vec d(k);
    for (int i = 0; i < k; ++i) {
      N.row(i) = 2.0 * cell.halfspaces[idx[i]].normal.transpose();
      d[i] = cell.halfspaces[idx[i]].offset;
    }
    Mat M = N * N.transpose();
    Eigen::FullPivLU<Mat> lu(M);
    if (!lu.isInvertible()) return;
    Vec z = p - N.transpose() * lu.solve(N * p - d);
    if (!contains(cell, z, cfg.feas_tol)) return;
    best = std::min(best, (p - z).norm());
  };

  for (int k = 1; k <= n; ++k) {
    idx.assign(k, 0);
    std::iota(idx.begin(), idx.end(), 0);
    if (k > m) break;
    while (true) {
      consider(k);
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == m - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return best;
}

}  // namespace latcell
