#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "latcell/io.hpp"

namespace {

void parse_window(const std::string& window, long long& lo, long long& hi) {
  size_t colon = window.find(':');
  if (colon == std::string::npos)
    throw latcell::Error("window must be of the form A:B");
  try {
    lo = std::stoll(window.substr(0, colon));
    hi = std::stoll(window.substr(colon + 1));
  } catch (const std::exception&) {
    throw latcell::Error("window must be of the form A:B with integers");
  }
  if (lo < 1 || hi < lo) throw latcell::Error("window must satisfy 1 <= A <= B");
}

int write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voronoi cells of full-rank lattices and convergence experiments"};
  app.require_subcommand(1);

  latcell::RunConfig rc;
  std::string output_path;
  std::string window = "1:200";

  if (const char* s = std::getenv("LATCELL_ENUM_BUDGET"))
    rc.tolerances.enum_budget = std::atoll(s);
  if (const char* s = std::getenv("LATCELL_VERTEX_BUDGET"))
    rc.tolerances.vertex_budget = std::atoll(s);

  app.add_option("-o,--output", output_path, "write output to a file instead of stdout");
  app.add_option("--rank-tol", rc.tolerances.rank_tol, "relative full-rank cutoff");
  app.add_option("--ball-tol", rc.tolerances.ball_tol, "norm slack in enumeration");
  app.add_option("--feas-tol", rc.tolerances.feas_tol, "constraint slack");
  app.add_option("--vertex-tol", rc.tolerances.vertex_tol, "vertex dedup distance");
  app.add_option("--membership-tol", rc.tolerances.membership_tol, "cell membership slack");
  app.add_option("--resid-tol", rc.tolerances.resid_tol, "convergence residual threshold");
  app.add_option("--separation-tol", rc.tolerances.separation_tol,
                 "minimum probe separation");
  app.add_option("--probe-margin", rc.tolerances.probe_margin,
                 "minimum probe distance from the target");
  app.add_option("--class-tol", rc.tolerances.class_tol, "tolerated misclass rate");
  app.add_option("--tail-fraction", rc.tolerances.tail_fraction,
                 "fraction of a window treated as the tail");

  auto* cell = app.add_subcommand(
      "cell", "facets, vertices, radii, and volume of the Voronoi cell");
  cell->add_option("lattice", rc.lattice_path, "lattice file")->required();
  cell->add_option("--volume-samples", rc.volume_samples,
                   "sample count for Monte Carlo volume (n > 3)");
  cell->add_option("--seed", rc.seed, "seed for Monte Carlo volume");

  auto* radii_cmd =
      app.add_subcommand("radii", "packing and covering radius of a lattice");
  radii_cmd->add_option("lattice", rc.lattice_path, "lattice file")->required();

  auto* converge = app.add_subcommand(
      "converge", "convergence report for a lattice family against a target");
  converge->add_option("--family", rc.family_spec, "family spec, e.g. scale-one-axis(1.0)")
      ->required();
  converge->add_option("--target", rc.target_path, "target lattice file")->required();
  converge->add_option("--kmax", rc.k_max, "last member index examined");

  auto* limits = app.add_subcommand(
      "limits", "limit-set report for a lattice family against a target");
  limits->add_option("--family", rc.family_spec, "family spec")->required();
  limits->add_option("--target", rc.target_path, "target lattice file")->required();
  limits->add_option("--window", window, "member window A:B");
  limits->add_option("--samples", rc.samples, "number of sample points");
  limits->add_option("--seed", rc.seed, "sampling seed");
  limits->add_option("--format", rc.format, "json, or csv for the Hausdorff trajectory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::string out;
    if (*cell) {
      out = latcell::run_cell(rc);
    } else if (*radii_cmd) {
      out = latcell::run_radii(rc);
    } else if (*converge) {
      out = latcell::run_converge(rc);
    } else {
      parse_window(window, rc.k_lo, rc.k_hi);
      out = latcell::run_limits(rc);
    }
    return write_output(output_path, out);
  } catch (const latcell::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
