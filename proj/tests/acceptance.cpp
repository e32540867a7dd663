// Acceptance gate for the lattice cell library: one pass/fail line per
// criterion, exit code = number of failed criteria.
//
//   acceptance <cli-binary> <data-dir>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latcell/io.hpp"
#include "test_support.hpp"

using namespace latcell;
using namespace testsupport;

namespace {

int failures = 0;
bool criterion_ok = true;
std::vector<std::string> details;

void expect(bool cond, const std::string& what) {
  if (!cond) {
    criterion_ok = false;
    if (details.size() < 8) details.push_back(what);
  }
}

void finish(int idx, const std::string& title) {
  std::cout << (criterion_ok ? "[PASS]" : "[FAIL]") << " criterion " << idx
            << ": " << title << "\n";
  for (const std::string& d : details) std::cout << "         " << d << "\n";
  if (!criterion_ok) ++failures;
  criterion_ok = true;
  details.clear();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double max_row_norm(const Lattice& lat) {
  return lat.basis.rowwise().norm().maxCoeff();
}

const Mat kZ2 = Mat::Identity(2, 2);
const Mat kHalfX = mat2(0.5, 0, 0, 1);

Mat hex_basis() {
  return mat2(1, 0, 0.5, std::sqrt(3.0) / 2.0);
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  CliRun r;
  std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  int rc = pclose(pipe);
  r.status = (rc >= 0 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
  return r;
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 eng(2026);
  std::mt19937_64 peng(9001);
  long long disagreements = 0;
  for (int t = 0; t < 20; ++t) {
    int n = (t % 2 == 0) ? 2 : 3;
    Lattice lat = make_lattice(random_basis(eng, n));
    VoronoiCell cell = build_cell(lat);
    auto oracle = oracle_enumerate(lat, 2.0 * cell.cutoff_radius);
    std::sort(oracle.begin(), oracle.end(),
              [](const LatticeVector& a, const LatticeVector& b) { return a.norm < b.norm; });
    const double hw = n * max_row_norm(lat) + 1.0;
    for (int s = 0; s < 10000; ++s) {
      Vec x = random_point(peng, n, hw);
      bool lib = contains(cell, x, 1e-9);
      bool orc = true;
      for (const auto& v : oracle) {
        if (2.0 * v.point.dot(x) > v.norm * v.norm + 1e-9) {
          orc = false;
          break;
        }
      }
      if (lib != orc) ++disagreements;
    }
  }
  expect(disagreements == 0,
         "membership disagreements: " + std::to_string(disagreements));
  double elapsed = seconds_since(t0);
  expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s, limit 60 s");
  finish(1, "finite halfspace description agrees with the brute-force oracle "
            "(20 lattices x 10^4 points)");
}

void criterion_2() {
  std::mt19937_64 eng(2026);
  double min_slack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    int n = (t % 2 == 0) ? 2 : 3;
    Lattice lat = make_lattice(random_basis(eng, n));
    VoronoiCell cell = with_vertices(prune_redundant(build_cell(lat)));
    const double bound = n * max_row_norm(lat) + 1e-9;
    for (const Vec& v : *cell.vertices) {
      min_slack = std::min(min_slack, bound - 1e-9 - v.norm());
      expect(v.norm() <= bound, "vertex norm " + std::to_string(v.norm()) +
                                    " above n*r = " + std::to_string(bound - 1e-9));
    }
  }
  finish(2, "every cell vertex lies in the ball of radius n*r (min slack " +
                std::to_string(min_slack) + ")");
}

void criterion_3() {
  // square lattice
  {
    Lattice lat = make_lattice(kZ2);
    VoronoiCell cell = with_vertices(prune_redundant(build_cell(lat)));
    expect(cell.halfspaces.size() == 4, "Z2 facet count");
    const std::vector<Vec>& vs = *cell.vertices;
    expect(vs.size() == 4, "Z2 vertex count");
    std::vector<Vec> want = {vec2(-0.5, -0.5), vec2(-0.5, 0.5), vec2(0.5, -0.5),
                             vec2(0.5, 0.5)};
    for (size_t i = 0; i < want.size() && i < vs.size(); ++i)
      expect((vs[i] - want[i]).norm() <= 1e-9, "Z2 vertex placement");
    CellRadii rr = radii(lat);
    expect(std::abs(rr.packing - 0.5) <= 1e-9, "Z2 packing radius");
    expect(std::abs(rr.covering - std::sqrt(2.0) / 2.0) <= 1e-9, "Z2 covering radius");
    VolumeEstimate vol = cell_volume(cell, VolumeMethod::Exact);
    expect(std::abs(vol.value - 1.0) <= 1e-9, "Z2 volume");
  }
  // hexagonal lattice
  {
    Lattice lat = make_lattice(hex_basis());
    VoronoiCell cell = with_vertices(prune_redundant(build_cell(lat)));
    expect(cell.halfspaces.size() == 6, "hex facet count");
    CellRadii rr = radii(lat);
    expect(std::abs(rr.covering - 1.0 / std::sqrt(3.0)) <= 1e-9, "hex covering radius");
    VolumeEstimate vol = cell_volume(cell, VolumeMethod::Exact);
    expect(std::abs(vol.value - std::sqrt(3.0) / 2.0) <= 1e-9, "hex volume");
  }
  // cubic lattice
  {
    Lattice lat = make_lattice(Mat::Identity(3, 3));
    VoronoiCell cell = with_vertices(prune_redundant(build_cell(lat)));
    expect(cell.halfspaces.size() == 6, "Z3 facet count");
    expect(cell.vertices->size() == 8, "Z3 vertex count");
    CellRadii rr = radii(lat);
    expect(std::abs(rr.covering - std::sqrt(3.0) / 2.0) <= 1e-9, "Z3 covering radius");
  }
  finish(3, "reference cells (square, hexagonal, cubic) match their known geometry");
}

void criterion_4() {
  std::mt19937_64 eng(404);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    Lattice lat = make_lattice(random_basis(eng, n));
    VoronoiCell cell = with_vertices(prune_redundant(build_cell(lat)));
    VolumeEstimate vol = cell_volume(cell, VolumeMethod::Exact);
    double rel = std::abs(vol.value - lat.det) / lat.det;
    expect(rel <= 1e-9, "exact volume off by relative " + std::to_string(rel));
  }
  std::vector<Mat> mc_bases = {Mat::Identity(3, 3), hex_basis(),
                               random_basis(eng, 4)};
  for (const Mat& b : mc_bases) {
    Lattice lat = make_lattice(b);
    VoronoiCell cell = prune_redundant(build_cell(lat));
    VolumeEstimate vol = cell_volume(cell, VolumeMethod::MonteCarlo, 1000000, 77);
    expect(std::abs(vol.value - lat.det) <= 3.0 * vol.std_error,
           "MC volume " + std::to_string(vol.value) + " vs det " +
               std::to_string(lat.det) + " beyond 3 SE " +
               std::to_string(vol.std_error));
  }
  finish(4, "cell volume equals the lattice determinant (exact n<=3, Monte Carlo beyond)");
}

void criterion_5() {
  std::mt19937_64 eng(505);
  std::vector<Mat> bases = {kZ2, hex_basis(), Mat::Identity(3, 3)};
  for (int t = 0; t < 3; ++t) bases.push_back(random_basis(eng, 2 + t % 2));
  long long misses = 0;
  for (const Mat& b : bases) {
    Lattice lat = make_lattice(b);
    VoronoiCell cell = prune_redundant(build_cell(lat));
    const double hw = lat.dim * max_row_norm(lat) + 2.0;
    for (int s = 0; s < 10000; ++s) {
      Vec x = random_point(eng, lat.dim, hw);
      Vec y = x - closest_vector(lat, x).vector.point;
      if (!contains(cell, y, 1e-9)) ++misses;
    }
  }
  expect(misses == 0, "points whose reduction left the cell: " + std::to_string(misses));
  finish(5, "x - closest(x) lands in the cell for every sampled point (tessellation)");
}

void criterion_6() {
  std::vector<LatticeSequence> families;
  families.push_back(LatticeSequence::scale_one_axis(kZ2, 1.0));
  families.push_back(LatticeSequence::perturb_all(kZ2, 1.0, 17));
  long long disagreements = 0;
  for (const auto& seq : families) {
    const double uniform = uniform_cell_radius(seq, 50);
    std::mt19937_64 eng(606);
    for (long long k = 1; k <= 50; ++k) {
      Lattice mem = seq.member(k);
      VoronoiCell own = build_cell(mem);
      VoronoiCell wide = build_cell_with_radius(mem, uniform);
      const double hw = mem.dim * max_row_norm(mem) + 1.0;
      for (int s = 0; s < 1000; ++s) {
        Vec x = random_point(eng, mem.dim, hw);
        if (contains(own, x, 1e-9) != contains(wide, x, 1e-9)) ++disagreements;
      }
    }
  }
  expect(disagreements == 0,
         "uniform-cutoff membership disagreements: " + std::to_string(disagreements));
  finish(6, "one cutoff radius serves every member of a convergent family");
}

void criterion_7() {
  auto scale = LatticeSequence::scale_one_axis(kZ2, 1.0);
  ConvergenceParams params;
  params.k_max = 4000000;  // tail residual 1/k must sink below resid_tol = 1e-6
  ConvergenceReport rep = check_convergence(scale, params);
  expect(rep.verdict == Verdict::Converged,
         std::string("scaling family verdict: ") + verdict_name(rep.verdict));

  bool found = false;
  for (const auto& trace : rep.cassels_i) {
    if (trace.coeffs.size() == 2 && trace.coeffs[0] == 1 && trace.coeffs[1] == 0) {
      found = true;
      for (size_t i = 0; i < rep.ks.size(); ++i) {
        double want = 1.0 / static_cast<double>(rep.ks[i]);
        expect(std::abs(trace.residuals[i] - want) <= 1e-9,
               "residual at k=" + std::to_string(rep.ks[i]) + " is " +
                   std::to_string(trace.residuals[i]) + ", expected 1/k");
      }
    }
  }
  expect(found, "no residual trace for the unit point (1,0)");

  auto alt = LatticeSequence::alternate(kZ2, kHalfX, kZ2);
  ConvergenceParams alt_params;
  alt_params.k_max = 200;
  ConvergenceReport bad = check_convergence(alt, alt_params);
  expect(bad.verdict == Verdict::NotConverged,
         std::string("alternating family verdict: ") + verdict_name(bad.verdict));

  auto seps = cassels_check_ii(alt, {vec2(0.5, 0)}, 150, 200);
  expect(seps.size() == 1 && !seps[0].verdict,
         "probe (1/2, 0) was not flagged as approached");
  finish(7, "two-sided convergence test separates the scaling and alternating families");
}

void criterion_8() {
  auto t0 = std::chrono::steady_clock::now();
  auto scale = LatticeSequence::scale_one_axis(kZ2, 1.0);
  LimitParams params;
  params.k_lo = 1;
  params.k_hi = 200;
  params.n_samples = 10000;
  params.seed = 20260816;
  LimitReport rep = verify_main_theorem(scale, params);
  expect(rep.interior_misclass == 0.0,
         "interior misclassification " + std::to_string(rep.interior_misclass));
  expect(rep.exterior_misclass == 0.0,
         "exterior misclassification " + std::to_string(rep.exterior_misclass));
  for (long long k = 1; k <= 200; ++k) {
    double want = 0.5 / static_cast<double>(k);
    double got = rep.hausdorff[static_cast<size_t>(k - 1)];
    expect(std::abs(got - want) <= 1e-9,
           "d_H at k=" + std::to_string(k) + " is " + std::to_string(got) +
               ", expected 1/(2k)");
  }
  // analytic final value is exactly 1/400; allow the shared 1e-9 slack
  expect(rep.hausdorff.back() <= 0.0025 + 1e-9,
         "final d_H " + std::to_string(rep.hausdorff.back()));
  expect(rep.pass, "verdict on the scaling family: " + rep.note);

  auto alt = LatticeSequence::alternate(kZ2, kHalfX, kZ2);
  LimitReport bad = verify_main_theorem(alt, params);
  expect(!bad.pass, "alternating family unexpectedly passed");
  long long limsup_only = 0;
  for (const auto& row : bad.counts)
    limsup_only += row[static_cast<size_t>(PointClass::LimsupOnly)];
  expect(limsup_only > 0, "alternating family produced no oscillating points");

  double elapsed = seconds_since(t0);
  expect(elapsed < 120.0, "runtime " + std::to_string(elapsed) + " s, limit 120 s");
  finish(8, "limit-set experiment verifies cell convergence on [1,200] "
            "and rejects the oscillating family");
}

void criterion_9(const std::string& cli, const std::string& data) {
  const std::string z2 = data + "/z2.lat";
  const std::string z4 = data + "/z4.lat";
  const std::string rect = data + "/rect35.lat";
  const std::string half = data + "/half_x_z2.lat";
  std::vector<std::string> commands = {
      "cell '" + z2 + "'",
      "cell '" + z4 + "' --volume-samples 100000 --seed 3",
      "radii '" + rect + "'",
      "converge --family 'scale-one-axis(1)' --target '" + z2 + "' --kmax 400",
      "converge --family 'alternate(" + z2 + ", " + half + ")' --target '" + z2 +
          "' --kmax 120",
      "limits --family 'scale-one-axis(1)' --target '" + z2 +
          "' --window 1:80 --samples 2000 --seed 5",
      "limits --family 'perturb-all(0.5, 11)' --target '" + z2 +
          "' --window 1:50 --samples 1500 --seed 9 --format csv",
  };
  for (const std::string& args : commands) {
    CliRun first = run_cli(cli, args);
    CliRun second = run_cli(cli, args);
    expect(first.status == 0, "exit " + std::to_string(first.status) + ": " + args);
    expect(!first.out.empty(), "no output: " + args);
    expect(first.status == second.status && first.out == second.out,
           "rerun differed: " + args);
  }
  finish(9, "every command is byte-identical across reruns");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <data-dir>\n";
    return 1;
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argv[1], argv[2]);
  if (failures == 0)
    std::cout << "acceptance: all 9 criteria passed\n";
  else
    std::cout << "acceptance: " << failures << " criteria failed\n";
  return failures;
}
