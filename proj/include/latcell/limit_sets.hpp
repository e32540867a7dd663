#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "latcell/cell.hpp"
#include "latcell/convergence.hpp"

namespace latcell {

/// Membership bits of one point across a window of member cells:
/// bits[j] tells whether V(member k_lo + j) contains the point.
struct MembershipTrace {
  Vec point;
  long long k_lo = 0;
  long long k_hi = 0;
  std::vector<char> bits;  // size k_hi - k_lo + 1
};

/// Finite-window reading of eventually-always / infinitely-often
/// membership, judged on the tail of the trace.
enum class PointClass { LiminfMember, LimsupOnly, Outside };

/// Position relative to the target cell, split by the interior margin.
enum class TargetClass { Interior, Boundary, Exterior };

const char* point_class_name(PointClass c);
const char* target_class_name(TargetClass c);

/// Pruned member cells (with vertices) over a window, built once and
/// shared by every trace. Immutable after construction.
class CellSequence {
 public:
  CellSequence(const LatticeSequence& seq, long long k_lo, long long k_hi,
               const Config& cfg = {});

  long long k_lo() const { return k_lo_; }
  long long k_hi() const { return k_hi_; }
  const VoronoiCell& cell(long long k) const;

 private:
  long long k_lo_ = 0;
  long long k_hi_ = 0;
  std::vector<VoronoiCell> cells_;
};

MembershipTrace membership_trace(const CellSequence& cells, const Vec& x,
                                 const Config& cfg = {});

/// LiminfMember if every tail bit is set, LimsupOnly if some are,
/// Outside if none. The tail is the last tail_fraction of the window
/// (at least one bit).
PointClass classify_point(const MembershipTrace& trace, double tail_fraction);

/// max over vertices of each cell of the distance to the other cell.
/// For convex bodies the maximizing point is a vertex, so this is the
/// exact Hausdorff distance. Both cells must be pruned; vertices are
/// computed if not cached (practical for n <= 4).
double hausdorff_distance(const VoronoiCell& a, const VoronoiCell& b,
                          const Config& cfg = {});

struct LimitSample {
  Vec point;
  PointClass cls = PointClass::Outside;
  TargetClass target_cls = TargetClass::Exterior;
};

struct LimitParams {
  long long k_lo = 1;
  long long k_hi = 200;
  long long n_samples = 10000;
  std::uint64_t seed = 0;
};

/// Full record of one limit-set experiment. counts[t][c] is the number
/// of samples with target class t (interior, boundary, exterior) and
/// point class c (liminf-member, limsup-only, outside). Misclass rates
/// cover the two constrained corners: interior samples that are not
/// liminf-members and exterior samples that are not outside.
struct LimitReport {
  long long k_lo = 0;
  long long k_hi = 0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  double sample_radius = 0.0;
  double interior_margin = 0.0;
  double h_tol = 0.0;
  std::vector<LimitSample> samples;
  std::array<std::array<long long, 3>, 3> counts{};
  double interior_misclass = 0.0;
  double exterior_misclass = 0.0;
  std::vector<double> hausdorff;  // d_H(member k, target) for each k in the window
  bool pass = false;
  std::string note;
};

/// Samples points uniformly from the ball of radius 1.1 n r(target),
/// classifies each by its membership trace and by the target cell
/// (interior/exterior split by the margin 0.02 covering radius), and
/// records the Hausdorff trajectory. Boundary-band samples are
/// reported but never counted as misclassified.
LimitReport estimate_limit_sets(const LatticeSequence& seq, const LimitParams& params,
                                const Config& cfg = {});

/// estimate_limit_sets plus the verdict: pass iff both misclass rates
/// are within class_tol and every tail-window Hausdorff distance is
/// below h_tol (0.02 covering radius).
LimitReport verify_main_theorem(const LatticeSequence& seq, const LimitParams& params,
                                const Config& cfg = {});

}  // namespace latcell
