#include "latcell/limit_sets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace latcell {

namespace {

double u01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

long long tail_length(long long window, double tail_fraction) {
  long long t = std::llround(tail_fraction * static_cast<double>(window));
  return std::clamp<long long>(t, 1, window);
}

double max_vertex_norm(const VoronoiCell& cell, const Config& cfg) {
  double m = 0.0;
  const std::vector<Vec>& vs = cell.vertices ? *cell.vertices : vertices(cell, cfg);
  for (const Vec& v : vs) m = std::max(m, v.norm());
  return m;
}

}  // namespace

const char* point_class_name(PointClass c) {
  switch (c) {
    case PointClass::LiminfMember: return "liminf-member";
    case PointClass::LimsupOnly: return "limsup-only";
    case PointClass::Outside: return "outside";
  }
  return "outside";
}

const char* target_class_name(TargetClass c) {
  switch (c) {
    case TargetClass::Interior: return "interior";
    case TargetClass::Boundary: return "boundary";
    case TargetClass::Exterior: return "exterior";
  }
  return "exterior";
}

CellSequence::CellSequence(const LatticeSequence& seq, long long k_lo, long long k_hi,
                           const Config& cfg)
    : k_lo_(k_lo), k_hi_(k_hi) {
  if (k_lo < 1 || k_hi < k_lo) throw Error("CellSequence: bad window");
  cells_.reserve(static_cast<size_t>(k_hi - k_lo + 1));
  for (long long k = k_lo; k <= k_hi; ++k) {
    Lattice mem = seq.member(k, cfg);
    cells_.push_back(
        with_vertices(prune_redundant(build_cell(mem, cfg), cfg.feas_tol, cfg), cfg));
  }
}

const VoronoiCell& CellSequence::cell(long long k) const {
  if (k < k_lo_ || k > k_hi_) throw Error("CellSequence: k outside window");
  return cells_[static_cast<size_t>(k - k_lo_)];
}

MembershipTrace membership_trace(const CellSequence& cells, const Vec& x,
                                 const Config& cfg) {
  MembershipTrace t;
  t.point = x;
  t.k_lo = cells.k_lo();
  t.k_hi = cells.k_hi();
  t.bits.reserve(static_cast<size_t>(t.k_hi - t.k_lo + 1));
  for (long long k = t.k_lo; k <= t.k_hi; ++k)
    t.bits.push_back(contains(cells.cell(k), x, cfg.membership_tol) ? 1 : 0);
  return t;
}

PointClass classify_point(const MembershipTrace& trace, double tail_fraction) {
  const long long window = static_cast<long long>(trace.bits.size());
  if (window == 0) throw Error("classify_point: empty trace");
  const long long tail = tail_length(window, tail_fraction);
  bool all = true, any = false;
  for (long long j = window - tail; j < window; ++j) {
    bool bit = trace.bits[static_cast<size_t>(j)] != 0;
    all = all && bit;
    any = any || bit;
  }
  if (all) return PointClass::LiminfMember;
  if (any) return PointClass::LimsupOnly;
  return PointClass::Outside;
}

double hausdorff_distance(const VoronoiCell& a, const VoronoiCell& b, const Config& cfg) {
  const std::vector<Vec> va = a.vertices ? *a.vertices : vertices(a, cfg);
  const std::vector<Vec> vb = b.vertices ? *b.vertices : vertices(b, cfg);
  double d = 0.0;
  for (const Vec& p : va) d = std::max(d, distance_to_cell(b, p, cfg));
  for (const Vec& q : vb) d = std::max(d, distance_to_cell(a, q, cfg));
  return d;
}

LimitReport estimate_limit_sets(const LatticeSequence& seq, const LimitParams& params,
                                const Config& cfg) {
  const Lattice& tgt = seq.target();
  const int n = tgt.dim;

  LimitReport rep;
  rep.k_lo = params.k_lo;
  rep.k_hi = params.k_hi;
  rep.n_samples = params.n_samples;
  rep.seed = params.seed;

  VoronoiCell target_cell =
      with_vertices(prune_redundant(build_cell(tgt, cfg), cfg.feas_tol, cfg), cfg);
  const double covering = max_vertex_norm(target_cell, cfg);
  rep.interior_margin = cfg.interior_margin_factor * covering;
  rep.h_tol = cfg.h_tol_factor * covering;
  rep.sample_radius = 1.1 * n * tgt.basis_norm_max;

  CellSequence cells(seq, params.k_lo, params.k_hi, cfg);

  std::mt19937_64 eng(params.seed);
  Vec x(n);
  rep.samples.reserve(static_cast<size_t>(params.n_samples));
  for (long long s = 0; s < params.n_samples; ++s) {
    do {
      for (int i = 0; i < n; ++i) x[i] = rep.sample_radius * (2.0 * u01(eng) - 1.0);
    } while (x.norm() > rep.sample_radius);

    LimitSample sample;
    sample.point = x;
    sample.cls = classify_point(membership_trace(cells, x, cfg), cfg.tail_fraction);
    if (contains(target_cell, x, -rep.interior_margin))
      sample.target_cls = TargetClass::Interior;
    else if (!contains(target_cell, x, rep.interior_margin))
      sample.target_cls = TargetClass::Exterior;
    else
      sample.target_cls = TargetClass::Boundary;
    rep.counts[static_cast<size_t>(sample.target_cls)]
              [static_cast<size_t>(sample.cls)]++;
    rep.samples.push_back(std::move(sample));
  }

  const auto& interior = rep.counts[static_cast<size_t>(TargetClass::Interior)];
  const auto& exterior = rep.counts[static_cast<size_t>(TargetClass::Exterior)];
  long long interior_total = interior[0] + interior[1] + interior[2];
  long long exterior_total = exterior[0] + exterior[1] + exterior[2];
  long long interior_bad =
      interior_total - interior[static_cast<size_t>(PointClass::LiminfMember)];
  long long exterior_bad =
      exterior_total - exterior[static_cast<size_t>(PointClass::Outside)];
  rep.interior_misclass = interior_total == 0
                              ? 0.0
                              : static_cast<double>(interior_bad) / interior_total;
  rep.exterior_misclass = exterior_total == 0
                              ? 0.0
                              : static_cast<double>(exterior_bad) / exterior_total;

  rep.hausdorff.reserve(static_cast<size_t>(params.k_hi - params.k_lo + 1));
  for (long long k = params.k_lo; k <= params.k_hi; ++k)
    rep.hausdorff.push_back(hausdorff_distance(cells.cell(k), target_cell, cfg));

  return rep;
}

LimitReport verify_main_theorem(const LatticeSequence& seq, const LimitParams& params,
                                const Config& cfg) {
  LimitReport rep = estimate_limit_sets(seq, params, cfg);

  const long long window = rep.k_hi - rep.k_lo + 1;
  const long long tail = tail_length(window, cfg.tail_fraction);
  double tail_h_max = 0.0;
  for (long long j = window - tail; j < window; ++j)
    tail_h_max = std::max(tail_h_max, rep.hausdorff[static_cast<size_t>(j)]);

  const bool classes_ok = rep.interior_misclass <= cfg.class_tol &&
                          rep.exterior_misclass <= cfg.class_tol;
  const bool hausdorff_ok = tail_h_max < rep.h_tol;
  rep.pass = classes_ok && hausdorff_ok;

  std::ostringstream note;
  if (rep.pass) {
    note << "cell sequence tracks the target cell on the examined window";
  } else {
    note << "FAIL:";
    if (!classes_ok)
      note << " misclass rates interior=" << rep.interior_misclass
           << " exterior=" << rep.exterior_misclass << " exceed class_tol";
    if (!hausdorff_ok)
      note << " tail Hausdorff max=" << tail_h_max << " not below h_tol=" << rep.h_tol;
    long long limsup_only = 0;
    for (const auto& row : rep.counts)
      limsup_only += row[static_cast<size_t>(PointClass::LimsupOnly)];
    if (limsup_only > 0)
      note << "; " << limsup_only << " samples oscillate (limsup-only)";
  }
  rep.note = note.str();
  return rep;
}

}  // namespace latcell
