#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latcell/lattice.hpp"

namespace latcell {

/// One defining inequality of a Voronoi cell: 2 v.x <= ||v||^2, where
/// v is the lattice vector stored in `source` (normal == source.point).
struct Halfspace {
  Vec normal;
  double offset = 0.0;  // ||normal||^2
  LatticeVector source;
};

/// The cell V_R(lat): intersection of the halfspaces of all nonzero
/// lattice vectors with norm at most the cutoff radius. With the
/// cutoff 2rn this equals the true Voronoi cell. Immutable after
/// build/prune; membership tests are pure.
struct VoronoiCell {
  Lattice lattice;
  double cutoff_radius = 0.0;
  std::vector<Halfspace> halfspaces;
  bool pruned = false;
  std::optional<std::vector<Vec>> vertices;
};

struct CellRadii {
  double packing = 0.0;   // inradius, half the shortest nonzero vector
  double covering = 0.0;  // circumradius, max vertex norm
};

enum class VolumeMethod { Auto, Exact, MonteCarlo };

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for the exact method
  VolumeMethod method = VolumeMethod::Exact;
  long long samples = 0;
};

/// The cutoff radius R = 2 n r that makes V_R equal the Voronoi cell,
/// with r the largest basis row norm.
double relevant_radius(const Lattice& lat);

VoronoiCell build_cell(const Lattice& lat, const Config& cfg = {});

/// Same construction at an explicit cutoff (used for uniform-radius
/// checks across lattice sequences).
VoronoiCell build_cell_with_radius(const Lattice& lat, double radius,
                                   const Config& cfg = {});

/// True iff 2 v.x <= ||v||^2 + tol for every halfspace. Negative tol
/// demands strict interior membership by a margin.
bool contains(const VoronoiCell& cell, const Vec& x, double tol);

/// Reduces the halfspace list to the unique minimal subset defining
/// the same point set. A halfspace is kept iff maximizing 2 v.x over
/// the cell without it exceeds ||v||^2 + feas_tol, so halfspaces that
/// merely touch the boundary are classified redundant. Processes +-v
/// pairs together, which preserves central symmetry exactly.
VoronoiCell prune_redundant(const VoronoiCell& cell, double feas_tol = Config{}.feas_tol,
                            const Config& cfg = {});

/// All vertices of a pruned cell, deduplicated within vertex_tol and
/// sorted lexicographically. Each is the solution of n facet equalities
/// with linearly independent normals, feasible within feas_tol.
/// Intended for small n; throws BudgetExceededError when the number of
/// n-subsets exceeds cfg.vertex_budget.
std::vector<Vec> vertices(const VoronoiCell& cell, const Config& cfg = {});

/// Copy of the cell with the vertex list computed and stored.
VoronoiCell with_vertices(VoronoiCell cell, const Config& cfg = {});

/// Packing radius (half the shortest nonzero vector norm) and covering
/// radius (largest vertex norm of the Voronoi cell).
CellRadii radii(const Lattice& lat, const Config& cfg = {});

/// Volume of a pruned cell. Exact (fan triangulation around the
/// origin) for n <= 3; Monte Carlo over the box [-nr, nr]^n otherwise,
/// with a standard-error estimate. Auto picks exact when available.
VolumeEstimate cell_volume(const VoronoiCell& cell, VolumeMethod method = VolumeMethod::Auto,
                           long long samples = 1000000, std::uint64_t seed = 0,
                           const Config& cfg = {});

/// Euclidean distance from a point to a pruned cell (0 if inside).
/// The projection is found by enumerating active facet subsets, which
/// is exact for convex polytopes at small n.
double distance_to_cell(const VoronoiCell& cell, const Vec& p, const Config& cfg = {});

}  // namespace latcell
