#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "latcell/cell.hpp"
#include "test_support.hpp"

using namespace latcell;
using namespace testsupport;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Lattice hexagonal() { return make_lattice(mat2(1, 0, 0.5, std::sqrt(3.0) / 2.0)); }

VoronoiCell pruned_cell(const Lattice& lat) {
  return prune_redundant(build_cell(lat), Config{}.feas_tol);
}

std::vector<std::vector<long long>> facet_coeffs(const VoronoiCell& cell) {
  std::vector<std::vector<long long>> out;
  for (const auto& h : cell.halfspaces)
    out.emplace_back(h.source.coeffs.data(),
                     h.source.coeffs.data() + cell.lattice.dim);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("relevant_radius is twice dimension times longest row") {
  CHECK(relevant_radius(make_lattice(Mat::Identity(2, 2))) == doctest::Approx(4.0));
  CHECK(relevant_radius(make_lattice(Mat::Identity(3, 3))) == doctest::Approx(6.0));
  CHECK(relevant_radius(make_lattice(mat2(3, 0, 0, 5))) == doctest::Approx(20.0));
}

TEST_CASE("build_cell lists one halfspace per enumerated vector") {
  Lattice z2 = make_lattice(Mat::Identity(2, 2));
  VoronoiCell cell = build_cell(z2);
  CHECK(cell.halfspaces.size() == 48);
  CHECK(cell.cutoff_radius == doctest::Approx(4.0));
  CHECK_FALSE(cell.pruned);
  for (const auto& h : cell.halfspaces) {
    CHECK((h.normal - h.source.point).norm() == 0.0);
    CHECK(h.offset == doctest::Approx(h.source.point.squaredNorm()));
  }
}

TEST_CASE("contains respects the tolerance sign") {
  Lattice z2 = make_lattice(Mat::Identity(2, 2));
  VoronoiCell cell = pruned_cell(z2);
  Vec x(2);
  x << 0.5, 0.0;  // exactly on a facet
  CHECK(contains(cell, x, 1e-9));
  CHECK_FALSE(contains(cell, x, -1e-3));  // strict interior demanded
  x << 0.51, 0.0;
  CHECK_FALSE(contains(cell, x, 1e-9));
  x << 0.0, 0.0;
  CHECK(contains(cell, x, -1e-3));
}

TEST_CASE("pruning keeps exactly the facet-defining halfspaces") {
  CHECK(pruned_cell(make_lattice(Mat::Identity(2, 2))).halfspaces.size() == 4);
  CHECK(pruned_cell(hexagonal()).halfspaces.size() == 6);
  CHECK(pruned_cell(make_lattice(Mat::Identity(3, 3))).halfspaces.size() == 6);
  CHECK(pruned_cell(make_lattice(mat2(3, 0, 0, 5))).halfspaces.size() == 4);
  CHECK(pruned_cell(make_lattice(mat2(0.5, 0, 0, 1))).halfspaces.size() == 4);
  Mat one(1, 1);
  one << 1;
  CHECK(pruned_cell(make_lattice(one)).halfspaces.size() == 2);
}

TEST_CASE("pruned facets match the coset-minima characterization") {
  std::mt19937_64 eng(23);
  std::vector<Lattice> lats = {make_lattice(Mat::Identity(2, 2)), hexagonal(),
                               make_lattice(Mat::Identity(3, 3)),
                               make_lattice(mat2(3, 0, 0, 5))};
  for (int trial = 0; trial < 6; ++trial)
    lats.push_back(make_lattice(random_basis(eng, 2 + trial % 2)));
  for (const Lattice& lat : lats) {
    auto got = facet_coeffs(pruned_cell(lat));
    auto expected = oracle_relevant_coeffs(lat);
    CHECK(got == expected);
  }
}

TEST_CASE("pruning never changes the point set") {
  std::mt19937_64 eng(29);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + trial % 2;
    Lattice lat = make_lattice(random_basis(eng, n));
    VoronoiCell full = build_cell(lat);
    VoronoiCell pruned = prune_redundant(full, Config{}.feas_tol);
    CHECK(pruned.pruned);
    CHECK(pruned.halfspaces.size() <= full.halfspaces.size());
    for (int s = 0; s < 400; ++s) {
      Vec x = random_point(eng, n, n * lat.basis_norm_max);
      CHECK(contains(full, x, 1e-9) == contains(pruned, x, 1e-9));
    }
  }
}

TEST_CASE("cell membership is centrally symmetric") {
  std::mt19937_64 eng(31);
  Lattice lat = make_lattice(random_basis(eng, 3));
  VoronoiCell cell = pruned_cell(lat);
  for (int s = 0; s < 500; ++s) {
    Vec x = random_point(eng, 3, 3.0);
    CHECK(contains(cell, x, 1e-9) == contains(cell, (-x).eval(), 1e-9));
  }
}

TEST_CASE("vertices of the reference cells") {
  VoronoiCell z2 = pruned_cell(make_lattice(Mat::Identity(2, 2)));
  auto vz2 = vertices(z2);
  REQUIRE(vz2.size() == 4);
  // lexicographic order pins the expected list
  CHECK(vz2[0][0] == doctest::Approx(-0.5));
  CHECK(vz2[0][1] == doctest::Approx(-0.5));
  CHECK(vz2[3][0] == doctest::Approx(0.5));
  CHECK(vz2[3][1] == doctest::Approx(0.5));

  auto vhex = vertices(pruned_cell(hexagonal()));
  CHECK(vhex.size() == 6);
  for (const Vec& v : vhex)
    CHECK(v.norm() <= 1.0 / std::sqrt(3.0) + 1e-9);
  double max_norm = 0;
  for (const Vec& v : vhex) max_norm = std::max(max_norm, v.norm());
  CHECK(max_norm == doctest::Approx(1.0 / std::sqrt(3.0)));

  CHECK(vertices(pruned_cell(make_lattice(Mat::Identity(3, 3)))).size() == 8);
}

TEST_CASE("vertices demands a pruned cell and honors the budget") {
  Lattice z2 = make_lattice(Mat::Identity(2, 2));
  CHECK_THROWS_AS(vertices(build_cell(z2)), Error);
  Config tiny;
  tiny.vertex_budget = 3;
  CHECK_THROWS_AS(vertices(pruned_cell(z2), tiny), BudgetExceededError);
}

TEST_CASE("every vertex is feasible and inside the boundedness ball") {
  std::mt19937_64 eng(37);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + trial % 2;
    Lattice lat = make_lattice(random_basis(eng, n));
    VoronoiCell cell = pruned_cell(lat);
    for (const Vec& v : vertices(cell)) {
      CHECK(contains(cell, v, 1e-8));
      CHECK(v.norm() <= n * lat.basis_norm_max + 1e-9);
    }
  }
}

TEST_CASE("radii of the reference lattices") {
  CellRadii z2 = radii(make_lattice(Mat::Identity(2, 2)));
  CHECK(z2.packing == doctest::Approx(0.5));
  CHECK(z2.covering == doctest::Approx(std::sqrt(2.0) / 2.0));

  CellRadii hex = radii(hexagonal());
  CHECK(hex.packing == doctest::Approx(0.5));
  CHECK(hex.covering == doctest::Approx(1.0 / std::sqrt(3.0)));

  CellRadii z3 = radii(make_lattice(Mat::Identity(3, 3)));
  CHECK(z3.packing == doctest::Approx(0.5));
  CHECK(z3.covering == doctest::Approx(std::sqrt(3.0) / 2.0));

  CellRadii rect = radii(make_lattice(mat2(3, 0, 0, 5)));
  CHECK(rect.packing == doctest::Approx(1.5));
  CHECK(rect.covering == doctest::Approx(std::sqrt(8.5)));
}

TEST_CASE("covering radius dominates every point-to-lattice distance") {
  std::mt19937_64 eng(41);
  for (int trial = 0; trial < 4; ++trial) {
    int n = 2 + trial % 2;
    Lattice lat = make_lattice(random_basis(eng, n));
    double covering = radii(lat).covering;
    for (int s = 0; s < 100; ++s) {
      Vec x = random_point(eng, n, 5.0);
      CHECK(closest_vector(lat, x).dist <= covering + 1e-9);
    }
  }
}

TEST_CASE("packing radius equals the minimum facet distance") {
  std::mt19937_64 eng(43);
  for (int trial = 0; trial < 5; ++trial) {
    Lattice lat = make_lattice(random_basis(eng, 2 + trial % 2));
    VoronoiCell cell = pruned_cell(lat);
    // facet plane 2 v.x = ||v||^2 sits at distance ||v|| / 2
    double min_facet = std::numeric_limits<double>::infinity();
    for (const auto& h : cell.halfspaces)
      min_facet = std::min(min_facet, h.source.norm / 2.0);
    CHECK(radii(lat).packing == doctest::Approx(min_facet).epsilon(1e-10));
  }
}

TEST_CASE("exact volume equals the lattice determinant") {
  Lattice z2 = make_lattice(Mat::Identity(2, 2));
  CHECK(cell_volume(pruned_cell(z2)).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cell_volume(pruned_cell(hexagonal())).value ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-10));
  Mat one(1, 1);
  one << 2.5;
  CHECK(cell_volume(pruned_cell(make_lattice(one))).value == doctest::Approx(2.5));

  std::mt19937_64 eng(47);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + trial % 2;
    Lattice lat = make_lattice(random_basis(eng, n));
    VolumeEstimate est = cell_volume(pruned_cell(lat));
    CHECK(est.method == VolumeMethod::Exact);
    CHECK(est.value == doctest::Approx(lat.det).epsilon(1e-9));
  }
}

TEST_CASE("Monte Carlo volume brackets the determinant and is seed stable") {
  Lattice hex = hexagonal();
  VoronoiCell cell = pruned_cell(hex);
  VolumeEstimate est = cell_volume(cell, VolumeMethod::MonteCarlo, 200000, 5);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - hex.det) <= 3.0 * est.std_error);
  VolumeEstimate again = cell_volume(cell, VolumeMethod::MonteCarlo, 200000, 5);
  CHECK(est.value == again.value);
  CHECK(est.std_error == again.std_error);

  CHECK_THROWS_AS(
      cell_volume(pruned_cell(make_lattice(Mat::Identity(4, 4))), VolumeMethod::Exact),
      Error);
}

TEST_CASE("pruned cells scale linearly with the lattice") {
  Lattice hex = hexagonal();
  double c = 2.5;
  Lattice scaled = make_lattice(c * hex.basis);
  VoronoiCell a = pruned_cell(hex);
  VoronoiCell b = pruned_cell(scaled);
  REQUIRE(a.halfspaces.size() == b.halfspaces.size());
  // ties in the norm-lex order may permute under scaling; match as sets
  auto match = [](const Vec& w, const std::vector<Vec>& pool, double tol) {
    for (const Vec& p : pool)
      if ((w - p).norm() <= tol) return true;
    return false;
  };
  std::vector<Vec> scaled_normals;
  for (const auto& h : b.halfspaces) scaled_normals.push_back(h.normal);
  for (const auto& h : a.halfspaces)
    CHECK(match(c * h.normal, scaled_normals, 1e-9));
  auto va = vertices(a);
  auto vb = vertices(b);
  REQUIRE(va.size() == vb.size());
  for (const Vec& v : va) CHECK(match(c * v, vb, 1e-8));
}

TEST_CASE("nearest-lattice-point translation lands in the cell") {
  std::mt19937_64 eng(53);
  std::vector<Lattice> lats = {make_lattice(Mat::Identity(2, 2)), hexagonal()};
  for (int trial = 0; trial < 4; ++trial)
    lats.push_back(make_lattice(random_basis(eng, 2 + trial % 2)));
  for (const Lattice& lat : lats) {
    VoronoiCell cell = pruned_cell(lat);
    for (int s = 0; s < 500; ++s) {
      Vec x = random_point(eng, lat.dim, 8.0);
      ClosestResult r = closest_vector(lat, x);
      CHECK(contains(cell, (x - r.vector.point).eval(), 1e-9));
    }
  }
}

TEST_CASE("distance_to_cell projects onto the boundary") {
  VoronoiCell z2 = pruned_cell(make_lattice(Mat::Identity(2, 2)));
  Vec x(2);
  x << 0.2, -0.3;
  CHECK(distance_to_cell(z2, x) == 0.0);
  x << 1.0, 0.0;
  CHECK(distance_to_cell(z2, x) == doctest::Approx(0.5));
  x << 1.0, 1.0;  // nearest point is the corner (0.5, 0.5)
  CHECK(distance_to_cell(z2, x) == doctest::Approx(std::sqrt(0.5)));
  x << -2.0, 0.25;
  CHECK(distance_to_cell(z2, x) == doctest::Approx(1.5));

  // distance is radius - covering for points along a vertex direction
  VoronoiCell hex = pruned_cell(hexagonal());
  auto vhex = vertices(hex);
  Vec far = 3.0 * vhex[0];
  CHECK(distance_to_cell(hex, far) == doctest::Approx(2.0 * vhex[0].norm()));
}

TEST_CASE("volume in dimension four falls back to Monte Carlo") {
  Lattice z4 = make_lattice(Mat::Identity(4, 4));
  VoronoiCell cell = prune_redundant(build_cell(z4), Config{}.feas_tol);
  CHECK(cell.halfspaces.size() == 8);
  VolumeEstimate est = cell_volume(cell, VolumeMethod::Auto, 200000, 9);
  CHECK(est.method == VolumeMethod::MonteCarlo);
  CHECK(std::abs(est.value - 1.0) <= 3.0 * est.std_error);
}
