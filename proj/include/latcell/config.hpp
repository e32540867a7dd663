#pragma once

namespace latcell {

// Every tolerance and budget used by the library, stated once. All
// comparisons elsewhere go through a Config instance so tests and the
// CLI can pin or override them in one place.
struct Config {
  double rank_tol = 1e-10;       // relative singular-value cutoff for full rank
  double ball_tol = 1e-9;        // absolute slack on vector norms in enumeration
  double feas_tol = 1e-9;        // constraint slack for pruning and vertex checks
  double vertex_tol = 1e-8;      // vertex deduplication distance
  double membership_tol = 1e-9;  // default cell membership tolerance

  double resid_tol = 1e-6;       // convergence residual threshold over the tail
  double separation_tol = 1e-3;  // minimum tail distance for a separated probe
  double probe_margin = 1e-2;    // probes must sit at least this far from the target

  double interior_margin_factor = 0.02;  // boundary band, fraction of covering radius
  double h_tol_factor = 0.02;            // Hausdorff threshold, fraction of covering radius
  double class_tol = 1e-3;               // tolerated misclassification rate
  double tail_fraction = 0.25;           // fraction of a window treated as the tail

  long long enum_budget = 50000000;   // max coefficient tuples per enumeration
  long long vertex_budget = 2000000;  // max facet subsets tried in vertex enumeration
};

}  // namespace latcell
