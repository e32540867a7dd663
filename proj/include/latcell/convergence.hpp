#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latcell/lattice.hpp"

namespace latcell {

/// A deterministic sequence of full-rank lattices indexed k = 1, 2, ...
/// with an optional declared limit. Row i of every member basis
/// corresponds to row i of the target basis; residuals and checks rely
/// on that matching and do not attempt automatic basis alignment.
class LatticeSequence {
 public:
  using BasisFn = std::function<Mat(long long)>;

  /// basis(k) = target with row `axis` scaled by (1 + eps/k).
  static LatticeSequence scale_one_axis(const Mat& target, double eps, int axis = 0);

  /// basis(k) = target + (delta/k) * E_k with the entries of E_k drawn
  /// uniformly from [-1, 1] by a generator keyed on (seed, k), so
  /// basis(k) is a pure function of k.
  static LatticeSequence perturb_all(const Mat& target, double delta, std::uint64_t seed);

  /// basis(k) = a for odd k, b for even k.
  static LatticeSequence alternate(const Mat& a, const Mat& b,
                                   std::optional<Mat> target = std::nullopt);

  /// basis(k) = basis for all k; the target defaults to the same lattice.
  static LatticeSequence constant(const Mat& basis,
                                  std::optional<Mat> target = std::nullopt);

  /// Explicitly listed members for k = 1..members.size(); basis_at
  /// beyond the prefix is an error.
  static LatticeSequence explicit_prefix(std::vector<Mat> members,
                                         std::optional<Mat> target = std::nullopt);

  int dim() const { return dim_; }
  bool has_target() const { return target_.has_value(); }

  /// Declared limit lattice; throws MissingTargetError when absent.
  const Lattice& target() const;

  /// Raw basis of member k >= 1 (not validated for rank).
  Mat basis_at(long long k) const;

  /// Validated member lattice.
  Lattice member(long long k, const Config& cfg = {}) const;

  const std::string& describe() const { return description_; }

  /// Number of listed members for an explicit prefix, 0 when the
  /// sequence is defined for every k.
  long long prefix_size() const { return prefix_size_; }

 private:
  LatticeSequence(std::string description, int dim, std::optional<Lattice> target,
                  BasisFn fn, long long prefix_size);

  std::string description_;
  int dim_ = 0;
  std::optional<Lattice> target_;
  BasisFn basis_fn_;
  long long prefix_size_ = 0;
};

/// Per-probe outcome of the separation check: epsilon0 is the smallest
/// distance d(probe, member k) seen over the examined window, k0 the
/// first k attaining it, and the verdict is epsilon0 >= separation_tol.
struct ProbeSeparation {
  Vec probe;
  double epsilon0 = 0.0;
  long long k0 = 0;
  bool verdict = false;
};

/// Residual trace d(u, member k) for one lattice point u of the target.
struct PointResiduals {
  CoeffVec coeffs;
  Vec point;
  std::vector<double> residuals;  // aligned with the ks they were computed at
};

enum class Verdict { Converged, NotConverged, Inconclusive };

const char* verdict_name(Verdict v);

/// Everything check_convergence measured. Residual traces are reported
/// raw so the thresholds behind the verdict stay auditable; ks lists
/// the member indices the traces were sampled at.
struct ConvergenceReport {
  std::vector<long long> ks;
  std::vector<double> basis_residuals;          // aligned with ks
  std::vector<PointResiduals> cassels_i;        // residuals aligned with ks
  std::vector<ProbeSeparation> cassels_ii;
  long long cassels_ii_lo = 0;                  // contiguous separation window
  long long cassels_ii_hi = 0;
  double uniform_radius = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

/// max_i ||u_{ki} - u_i|| for k = 1..k_max, rows matched by index.
std::vector<double> basis_convergence(const LatticeSequence& seq, long long k_max);

/// For every target point u with coefficients in [-coeff_range,
/// coeff_range]^n, the distances d(u, member k) at the given ks.
/// Points ordered by odometer over the coefficient box.
std::vector<PointResiduals> cassels_check_i(const LatticeSequence& seq, int coeff_range,
                                            const std::vector<long long>& ks,
                                            const Config& cfg = {});

/// Separation check over the contiguous window k_lo..k_hi. Every probe
/// must satisfy d(probe, target) > probe_margin; ProbeInLatticeError
/// otherwise.
std::vector<ProbeSeparation> cassels_check_ii(const LatticeSequence& seq,
                                              const std::vector<Vec>& probes,
                                              long long k_lo, long long k_hi,
                                              const Config& cfg = {});

/// R' = max(2R, max_{k <= k_max} R_k) with R = 2n max_i ||u_i|| for the
/// target and R_k the same quantity for member k. Dominates both the
/// target cutoff and every examined member cutoff.
double uniform_cell_radius(const LatticeSequence& seq, long long k_max);

/// Member indices at which residual traces are sampled: every k up to
/// dense_upto, then geometrically spaced with the given ratio, always
/// including k_max.
std::vector<long long> k_schedule(long long k_max, long long dense_upto = 100,
                                  double ratio = 1.15);

struct ConvergenceParams {
  long long k_max = 200;
  int coeff_range = 2;
  std::vector<Vec> probes;       // empty: half basis vectors + half-sum,
                                 // filtered by the probe margin
  long long separation_window = 50;  // contiguous tail length for cassels_check_ii
};

/// Composite check. Verdict rules: any failed separation probe means
/// not-converged; otherwise converged requires every basis and point
/// residual sampled in the tail [k_max/2, k_max] to be below resid_tol;
/// anything else is inconclusive. "Converged" means consistent with
/// convergence on the examined data, nothing stronger.
ConvergenceReport check_convergence(const LatticeSequence& seq,
                                    const ConvergenceParams& params = {},
                                    const Config& cfg = {});

}  // namespace latcell
