#include "latcell/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace latcell {

namespace {

double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::optional<Lattice> make_target(const std::optional<Mat>& basis) {
  if (!basis) return std::nullopt;
  return make_lattice(*basis);
}

double max_row_norm(const Mat& b) {
  double r = 0.0;
  for (int i = 0; i < b.rows(); ++i) r = std::max(r, b.row(i).norm());
  return r;
}

}  // namespace

LatticeSequence::LatticeSequence(std::string description, int dim,
                                 std::optional<Lattice> target, BasisFn fn,
                                 long long prefix_size)
    : description_(std::move(description)),
      dim_(dim),
      target_(std::move(target)),
      basis_fn_(std::move(fn)),
      prefix_size_(prefix_size) {}

LatticeSequence LatticeSequence::scale_one_axis(const Mat& target, double eps, int axis) {
  Lattice tgt = make_lattice(target);
  if (axis < 0 || axis >= tgt.dim) throw Error("scale_one_axis: axis out of range");
  std::ostringstream d;
  d << "scale-one-axis(eps=" << eps << ", axis=" << axis << ")";
  Mat base = target;
  return LatticeSequence(
      d.str(), tgt.dim, tgt,
      [base, eps, axis](long long k) {
        Mat b = base;
        b.row(axis) *= 1.0 + eps / static_cast<double>(k);
        return b;
      },
      0);
}

LatticeSequence LatticeSequence::perturb_all(const Mat& target, double delta,
                                             std::uint64_t seed) {
  Lattice tgt = make_lattice(target);
  std::ostringstream d;
  d << "perturb-all(delta=" << delta << ", seed=" << seed << ")";
  Mat base = target;
  int n = tgt.dim;
  return LatticeSequence(
      d.str(), n, tgt,
      [base, delta, seed, n](long long k) {
        std::mt19937_64 eng(seed * 0x9E3779B97F4A7C15ull +
                            static_cast<std::uint64_t>(k));
        Mat b = base;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            b(i, j) += (delta / static_cast<double>(k)) * (2.0 * u01(eng) - 1.0);
        return b;
      },
      0);
}

LatticeSequence LatticeSequence::alternate(const Mat& a, const Mat& b,
                                           std::optional<Mat> target) {
  Lattice la = make_lattice(a);
  Lattice lb = make_lattice(b);
  if (la.dim != lb.dim) throw Error("alternate: dimension mismatch");
  return LatticeSequence(
      "alternate", la.dim, make_target(target),
      [a, b](long long k) { return (k % 2 == 1) ? a : b; }, 0);
}

LatticeSequence LatticeSequence::constant(const Mat& basis, std::optional<Mat> target) {
  Lattice lat = make_lattice(basis);
  Lattice tgt = target ? make_lattice(*target) : lat;
  if (tgt.dim != lat.dim) throw Error("constant: dimension mismatch");
  return LatticeSequence(
      "constant", lat.dim, tgt, [basis](long long) { return basis; }, 0);
}

LatticeSequence LatticeSequence::explicit_prefix(std::vector<Mat> members,
                                                 std::optional<Mat> target) {
  if (members.empty()) throw Error("explicit_prefix: no members");
  int n = static_cast<int>(members.front().rows());
  for (const Mat& m : members) {
    Lattice l = make_lattice(m);
    if (l.dim != n) throw Error("explicit_prefix: dimension mismatch");
  }
  long long size = static_cast<long long>(members.size());
  auto shared = std::make_shared<std::vector<Mat>>(std::move(members));
  return LatticeSequence(
      "explicit-prefix", n, make_target(target),
      [shared, size](long long k) {
        if (k < 1 || k > size) throw Error("explicit_prefix: member index out of range");
        return (*shared)[static_cast<size_t>(k - 1)];
      },
      size);
}

const Lattice& LatticeSequence::target() const {
  if (!target_) throw MissingTargetError("sequence has no declared target lattice");
  return *target_;
}

Mat LatticeSequence::basis_at(long long k) const {
  if (k < 1) throw Error("basis_at: k must be >= 1");
  return basis_fn_(k);
}

Lattice LatticeSequence::member(long long k, const Config& cfg) const {
  return make_lattice(basis_at(k), cfg.rank_tol);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::NotConverged: return "not-converged";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<double> basis_convergence(const LatticeSequence& seq, long long k_max) {
  const Lattice& tgt = seq.target();
  std::vector<double> out;
  out.reserve(static_cast<size_t>(k_max));
  for (long long k = 1; k <= k_max; ++k) {
    Mat b = seq.basis_at(k);
    double resid = 0.0;
    for (int i = 0; i < tgt.dim; ++i)
      resid = std::max(resid, (b.row(i) - tgt.basis.row(i)).norm());
    out.push_back(resid);
  }
  return out;
}

std::vector<PointResiduals> cassels_check_i(const LatticeSequence& seq, int coeff_range,
                                            const std::vector<long long>& ks,
                                            const Config& cfg) {
  const Lattice& tgt = seq.target();
  const int n = tgt.dim;
  if (coeff_range < 0) throw Error("cassels_check_i: coeff_range must be >= 0");

  std::vector<PointResiduals> out;
  CoeffVec c(n);
  c.setConstant(-coeff_range);
  while (true) {
    PointResiduals pr;
    pr.coeffs = c;
    pr.point = lattice_vector(tgt, c).point;
    pr.residuals.assign(ks.size(), 0.0);
    out.push_back(std::move(pr));
    int i = n - 1;
    while (i >= 0 && c[i] == coeff_range) c[i--] = -coeff_range;
    if (i < 0) break;
    ++c[i];
  }

  for (size_t j = 0; j < ks.size(); ++j) {
    Lattice mem = seq.member(ks[j], cfg);
    for (auto& pr : out) pr.residuals[j] = closest_vector(mem, pr.point, cfg).dist;
  }
  return out;
}

std::vector<ProbeSeparation> cassels_check_ii(const LatticeSequence& seq,
                                              const std::vector<Vec>& probes,
                                              long long k_lo, long long k_hi,
                                              const Config& cfg) {
  const Lattice& tgt = seq.target();
  if (k_lo < 1 || k_hi < k_lo) throw Error("cassels_check_ii: bad window");

  std::vector<ProbeSeparation> out;
  for (const Vec& x : probes) {
    double d = closest_vector(tgt, x, cfg).dist;
    if (d <= cfg.probe_margin) {
      std::ostringstream msg;
      msg << "probe at distance " << d << " from the target lattice (margin "
          << cfg.probe_margin << ")";
      throw ProbeInLatticeError(msg.str());
    }
    ProbeSeparation ps;
    ps.probe = x;
    ps.epsilon0 = std::numeric_limits<double>::infinity();
    out.push_back(std::move(ps));
  }

  for (long long k = k_lo; k <= k_hi; ++k) {
    Lattice mem = seq.member(k, cfg);
    for (auto& ps : out) {
      double d = closest_vector(mem, ps.probe, cfg).dist;
      if (d < ps.epsilon0) {
        ps.epsilon0 = d;
        ps.k0 = k;
      }
    }
  }
  for (auto& ps : out) ps.verdict = ps.epsilon0 >= cfg.separation_tol;
  return out;
}

double uniform_cell_radius(const LatticeSequence& seq, long long k_max) {
  const Lattice& tgt = seq.target();
  const double n = static_cast<double>(tgt.dim);
  double r_prime = 2.0 * (2.0 * n * tgt.basis_norm_max);
  for (long long k = 1; k <= k_max; ++k)
    r_prime = std::max(r_prime, 2.0 * n * max_row_norm(seq.basis_at(k)));
  return r_prime;
}

std::vector<long long> k_schedule(long long k_max, long long dense_upto, double ratio) {
  if (k_max < 1) throw Error("k_schedule: k_max must be >= 1");
  std::vector<long long> ks;
  for (long long k = 1; k <= std::min(k_max, dense_upto); ++k) ks.push_back(k);
  long long k = ks.back();
  while (k < k_max) {
    k = std::max(k + 1, static_cast<long long>(std::ceil(static_cast<double>(k) * ratio)));
    ks.push_back(std::min(k, k_max));
  }
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

ConvergenceReport check_convergence(const LatticeSequence& seq,
                                    const ConvergenceParams& params, const Config& cfg) {
  const Lattice& tgt = seq.target();
  long long k_max = params.k_max;
  if (seq.prefix_size() > 0) k_max = std::min(k_max, seq.prefix_size());
  if (k_max < 1) throw Error("check_convergence: empty sequence window");

  ConvergenceReport rep;
  rep.ks = k_schedule(k_max);

  rep.basis_residuals.reserve(rep.ks.size());
  for (long long k : rep.ks) {
    Mat b = seq.basis_at(k);
    double resid = 0.0;
    for (int i = 0; i < tgt.dim; ++i)
      resid = std::max(resid, (b.row(i) - tgt.basis.row(i)).norm());
    rep.basis_residuals.push_back(resid);
  }

  rep.cassels_i = cassels_check_i(seq, params.coeff_range, rep.ks, cfg);

  std::vector<Vec> probes = params.probes;
  if (probes.empty()) {
    // Half basis vectors and the half-sum. Each is at distance >= the
    // packing radius from the lattice, so the margin filter below only
    // trims genuinely degenerate cases.
    for (int i = 0; i < tgt.dim; ++i) probes.push_back(0.5 * tgt.basis.row(i).transpose());
    Vec half_sum = Vec::Zero(tgt.dim);
    for (int i = 0; i < tgt.dim; ++i) half_sum += 0.5 * tgt.basis.row(i).transpose();
    probes.push_back(half_sum);
    std::vector<Vec> kept;
    for (const Vec& x : probes)
      if (closest_vector(tgt, x, cfg).dist > cfg.probe_margin) kept.push_back(x);
    probes = std::move(kept);
  }
  rep.cassels_ii_hi = k_max;
  rep.cassels_ii_lo = std::max<long long>(1, k_max - params.separation_window + 1);
  rep.cassels_ii = cassels_check_ii(seq, probes, rep.cassels_ii_lo, rep.cassels_ii_hi, cfg);

  rep.uniform_radius = uniform_cell_radius(seq, k_max);

  bool separation_ok = true;
  for (const auto& ps : rep.cassels_ii) separation_ok = separation_ok && ps.verdict;

  const long long tail_start = (k_max + 1) / 2;
  bool tails_small = true;
  for (size_t j = 0; j < rep.ks.size(); ++j) {
    if (rep.ks[j] < tail_start) continue;
    tails_small = tails_small && rep.basis_residuals[j] < cfg.resid_tol;
    for (const auto& pr : rep.cassels_i)
      tails_small = tails_small && pr.residuals[j] < cfg.resid_tol;
  }

  if (!separation_ok) {
    rep.verdict = Verdict::NotConverged;
    rep.note = "a probe point was approached by the sequence";
  } else if (tails_small) {
    rep.verdict = Verdict::Converged;
    rep.note = "consistent with convergence on examined data";
  } else {
    rep.verdict = Verdict::Inconclusive;
    rep.note = "residual tail above resid_tol; examine a longer prefix";
  }
  return rep;
}

}  // namespace latcell
