#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "latcell/limit_sets.hpp"

namespace latcell {

/// Decimal form of x with 17 significant digits: locale independent,
/// round-trips to the identical double. Negative zero prints as 0.
std::string fmt_double(double x);

/// Lattice text format: first significant line holds n, the next n
/// lines hold one basis row of n decimals each. '#' starts a comment,
/// blank lines are ignored. The name labels ParseError messages.
Lattice parse_lattice_text(const std::string& text,
                           const std::string& name = "<input>",
                           const Config& cfg = {});

Lattice parse_lattice_file(const std::string& path, const Config& cfg = {});

/// Inverse of parse_lattice_text, 17 significant digits per entry.
std::string emit_lattice_text(const Lattice& lat);

/// Builds a sequence from a family spec string. Forms:
///   scale-one-axis(eps)          one target axis scaled by 1 + eps/k
///   perturb-all(delta, seed)     all entries jittered by delta/k
///   alternate(a.lat, b.lat)      lattice files for odd and even k
///   constant(lattice.lat)        the same lattice for every k
/// The first two require a target basis; the last two use it when
/// given (constant defaults to its own lattice as target).
LatticeSequence parse_family_spec(const std::string& spec,
                                  const std::optional<Mat>& target_basis,
                                  const Config& cfg = {});

/// One resolved invocation of the tool. The run_* functions return the
/// bytes to write to the output; identical RunConfig gives identical
/// bytes.
struct RunConfig {
  std::string lattice_path;
  std::string family_spec;
  std::string target_path;
  std::uint64_t seed = 0;
  long long samples = 10000;
  long long k_lo = 1;
  long long k_hi = 200;
  long long k_max = 200;
  long long volume_samples = 1000000;
  std::string format = "json";  // limits also accepts "csv"
  Config tolerances;
};

/// build -> prune -> vertices -> radii -> volume, emitted as the fixed
/// cell JSON schema.
std::string run_cell(const RunConfig& rc);

/// Packing and covering radius of one lattice, as JSON.
std::string run_radii(const RunConfig& rc);

/// Convergence report for a family against a target, as JSON.
std::string run_converge(const RunConfig& rc);

/// Limit-set report for a family against a target: JSON, or the
/// Hausdorff trajectory as CSV (columns k, d_H) when format is csv.
std::string run_limits(const RunConfig& rc);

}  // namespace latcell
