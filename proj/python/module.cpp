#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latcell/io.hpp"

namespace py = pybind11;
using namespace latcell;

PYBIND11_MODULE(_latcell, m) {
  m.doc() = "Voronoi cells of lattices and limit experiments on lattice sequences";

  py::register_exception<Error>(m, "Error");

  py::class_<Config>(m, "Config")
      .def(py::init<>())
      .def_readwrite("rank_tol", &Config::rank_tol)
      .def_readwrite("ball_tol", &Config::ball_tol)
      .def_readwrite("feas_tol", &Config::feas_tol)
      .def_readwrite("vertex_tol", &Config::vertex_tol)
      .def_readwrite("membership_tol", &Config::membership_tol)
      .def_readwrite("resid_tol", &Config::resid_tol)
      .def_readwrite("separation_tol", &Config::separation_tol)
      .def_readwrite("probe_margin", &Config::probe_margin)
      .def_readwrite("class_tol", &Config::class_tol)
      .def_readwrite("tail_fraction", &Config::tail_fraction)
      .def_readwrite("enum_budget", &Config::enum_budget)
      .def_readwrite("vertex_budget", &Config::vertex_budget);

  py::class_<Lattice>(m, "Lattice")
      .def_readonly("dim", &Lattice::dim)
      .def_readonly("basis", &Lattice::basis)
      .def_readonly("gram", &Lattice::gram)
      .def_readonly("det", &Lattice::det)
      .def("__repr__", [](const Lattice& l) {
        return "<Lattice dim=" + std::to_string(l.dim) + ">";
      });

  py::class_<LatticeVector>(m, "LatticeVector")
      .def_readonly("coeffs", &LatticeVector::coeffs)
      .def_readonly("point", &LatticeVector::point)
      .def_readonly("norm", &LatticeVector::norm);

  py::class_<ClosestResult>(m, "ClosestResult")
      .def_readonly("vector", &ClosestResult::vector)
      .def_readonly("dist", &ClosestResult::dist);

  m.def("make_lattice", &make_lattice, py::arg("basis"),
        py::arg("rank_tol") = Config{}.rank_tol,
        "Validate a square basis matrix (rows are basis vectors).");
  m.def("lattice_vector", &lattice_vector, py::arg("lattice"), py::arg("coeffs"));
  m.def("decompose_fundamental", &decompose_fundamental, py::arg("lattice"),
        py::arg("x"), "Split x = v + y with v in the lattice and y in the "
        "fundamental parallelepiped.");
  m.def("enumerate_in_ball", &enumerate_in_ball, py::arg("lattice"),
        py::arg("radius"), py::arg("cfg") = Config{},
        "All nonzero lattice vectors with norm <= radius, sorted.");
  m.def("shortest_vector", &shortest_vector, py::arg("lattice"),
        py::arg("cfg") = Config{});
  m.def("closest_vector", &closest_vector, py::arg("lattice"), py::arg("x"),
        py::arg("cfg") = Config{});

  py::class_<Halfspace>(m, "Halfspace")
      .def_readonly("normal", &Halfspace::normal)
      .def_readonly("offset", &Halfspace::offset)
      .def_readonly("source", &Halfspace::source);

  py::class_<VoronoiCell>(m, "VoronoiCell")
      .def_readonly("lattice", &VoronoiCell::lattice)
      .def_readonly("cutoff_radius", &VoronoiCell::cutoff_radius)
      .def_readonly("halfspaces", &VoronoiCell::halfspaces)
      .def_readonly("pruned", &VoronoiCell::pruned)
      .def_property_readonly("vertex_list", [](const VoronoiCell& c) {
        return c.vertices ? *c.vertices : std::vector<Vec>{};
      });

  py::class_<CellRadii>(m, "CellRadii")
      .def_readonly("packing", &CellRadii::packing)
      .def_readonly("covering", &CellRadii::covering);

  py::enum_<VolumeMethod>(m, "VolumeMethod")
      .value("Auto", VolumeMethod::Auto)
      .value("Exact", VolumeMethod::Exact)
      .value("MonteCarlo", VolumeMethod::MonteCarlo);

  py::class_<VolumeEstimate>(m, "VolumeEstimate")
      .def_readonly("value", &VolumeEstimate::value)
      .def_readonly("std_error", &VolumeEstimate::std_error)
      .def_readonly("method", &VolumeEstimate::method)
      .def_readonly("samples", &VolumeEstimate::samples);

  m.def("relevant_radius", &relevant_radius, py::arg("lattice"));
  m.def("build_cell", &build_cell, py::arg("lattice"), py::arg("cfg") = Config{});
  m.def("build_cell_with_radius", &build_cell_with_radius, py::arg("lattice"),
        py::arg("radius"), py::arg("cfg") = Config{});
  m.def("contains", &contains, py::arg("cell"), py::arg("x"), py::arg("tol"));
  m.def("prune_redundant", &prune_redundant, py::arg("cell"),
        py::arg("feas_tol") = Config{}.feas_tol, py::arg("cfg") = Config{});
  m.def("vertices", &vertices, py::arg("cell"), py::arg("cfg") = Config{});
  m.def("with_vertices", &with_vertices, py::arg("cell"), py::arg("cfg") = Config{});
  m.def("radii", &radii, py::arg("lattice"), py::arg("cfg") = Config{});
  m.def("cell_volume", &cell_volume, py::arg("cell"),
        py::arg("method") = VolumeMethod::Auto, py::arg("samples") = 1000000,
        py::arg("seed") = 0, py::arg("cfg") = Config{});
  m.def("distance_to_cell", &distance_to_cell, py::arg("cell"), py::arg("p"),
        py::arg("cfg") = Config{});

  py::class_<LatticeSequence>(m, "LatticeSequence")
      .def_static("scale_one_axis", &LatticeSequence::scale_one_axis,
                  py::arg("target"), py::arg("eps"), py::arg("axis") = 0)
      .def_static("perturb_all", &LatticeSequence::perturb_all, py::arg("target"),
                  py::arg("delta"), py::arg("seed"))
      .def_static("alternate", &LatticeSequence::alternate, py::arg("a"),
                  py::arg("b"), py::arg("target") = py::none())
      .def_static("constant", &LatticeSequence::constant, py::arg("basis"),
                  py::arg("target") = py::none())
      .def_static("explicit_prefix", &LatticeSequence::explicit_prefix,
                  py::arg("members"), py::arg("target") = py::none())
      .def_property_readonly("dim", &LatticeSequence::dim)
      .def("has_target", &LatticeSequence::has_target)
      .def("target", &LatticeSequence::target)
      .def("basis_at", &LatticeSequence::basis_at, py::arg("k"))
      .def("member", &LatticeSequence::member, py::arg("k"), py::arg("cfg") = Config{})
      .def("describe", &LatticeSequence::describe);

  py::class_<ProbeSeparation>(m, "ProbeSeparation")
      .def_readonly("probe", &ProbeSeparation::probe)
      .def_readonly("epsilon0", &ProbeSeparation::epsilon0)
      .def_readonly("k0", &ProbeSeparation::k0)
      .def_readonly("verdict", &ProbeSeparation::verdict);

  py::class_<PointResiduals>(m, "PointResiduals")
      .def_readonly("coeffs", &PointResiduals::coeffs)
      .def_readonly("point", &PointResiduals::point)
      .def_readonly("residuals", &PointResiduals::residuals);

  py::enum_<Verdict>(m, "Verdict")
      .value("Converged", Verdict::Converged)
      .value("NotConverged", Verdict::NotConverged)
      .value("Inconclusive", Verdict::Inconclusive);

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("ks", &ConvergenceReport::ks)
      .def_readonly("basis_residuals", &ConvergenceReport::basis_residuals)
      .def_readonly("cassels_i", &ConvergenceReport::cassels_i)
      .def_readonly("cassels_ii", &ConvergenceReport::cassels_ii)
      .def_readonly("cassels_ii_lo", &ConvergenceReport::cassels_ii_lo)
      .def_readonly("cassels_ii_hi", &ConvergenceReport::cassels_ii_hi)
      .def_readonly("uniform_radius", &ConvergenceReport::uniform_radius)
      .def_readonly("verdict", &ConvergenceReport::verdict)
      .def_readonly("note", &ConvergenceReport::note);

  py::class_<ConvergenceParams>(m, "ConvergenceParams")
      .def(py::init<>())
      .def_readwrite("k_max", &ConvergenceParams::k_max)
      .def_readwrite("coeff_range", &ConvergenceParams::coeff_range)
      .def_readwrite("probes", &ConvergenceParams::probes)
      .def_readwrite("separation_window", &ConvergenceParams::separation_window);

  m.def("basis_convergence", &basis_convergence, py::arg("seq"), py::arg("k_max"));
  m.def("cassels_check_i", &cassels_check_i, py::arg("seq"), py::arg("coeff_range"),
        py::arg("ks"), py::arg("cfg") = Config{});
  m.def("cassels_check_ii", &cassels_check_ii, py::arg("seq"), py::arg("probes"),
        py::arg("k_lo"), py::arg("k_hi"), py::arg("cfg") = Config{});
  m.def("uniform_cell_radius", &uniform_cell_radius, py::arg("seq"), py::arg("k_max"));
  m.def("k_schedule", &k_schedule, py::arg("k_max"), py::arg("dense_upto") = 100,
        py::arg("ratio") = 1.15);
  m.def("check_convergence", &check_convergence, py::arg("seq"),
        py::arg("params") = ConvergenceParams{}, py::arg("cfg") = Config{});

  py::enum_<PointClass>(m, "PointClass")
      .value("LiminfMember", PointClass::LiminfMember)
      .value("LimsupOnly", PointClass::LimsupOnly)
      .value("Outside", PointClass::Outside);

  py::enum_<TargetClass>(m, "TargetClass")
      .value("Interior", TargetClass::Interior)
      .value("Boundary", TargetClass::Boundary)
      .value("Exterior", TargetClass::Exterior);

  py::class_<LimitSample>(m, "LimitSample")
      .def_readonly("point", &LimitSample::point)
      .def_readonly("cls", &LimitSample::cls)
      .def_readonly("target_cls", &LimitSample::target_cls);

  py::class_<LimitParams>(m, "LimitParams")
      .def(py::init<>())
      .def_readwrite("k_lo", &LimitParams::k_lo)
      .def_readwrite("k_hi", &LimitParams::k_hi)
      .def_readwrite("n_samples", &LimitParams::n_samples)
      .def_readwrite("seed", &LimitParams::seed);

  py::class_<LimitReport>(m, "LimitReport")
      .def_readonly("k_lo", &LimitReport::k_lo)
      .def_readonly("k_hi", &LimitReport::k_hi)
      .def_readonly("n_samples", &LimitReport::n_samples)
      .def_readonly("seed", &LimitReport::seed)
      .def_readonly("sample_radius", &LimitReport::sample_radius)
      .def_readonly("interior_margin", &LimitReport::interior_margin)
      .def_readonly("h_tol", &LimitReport::h_tol)
      .def_readonly("samples", &LimitReport::samples)
      .def_readonly("counts", &LimitReport::counts)
      .def_readonly("interior_misclass", &LimitReport::interior_misclass)
      .def_readonly("exterior_misclass", &LimitReport::exterior_misclass)
      .def_readonly("hausdorff", &LimitReport::hausdorff)
      .def_readonly("pass_", &LimitReport::pass)
      .def_readonly("note", &LimitReport::note);

  m.def("hausdorff_distance", &hausdorff_distance, py::arg("a"), py::arg("b"),
        py::arg("cfg") = Config{});
  m.def("estimate_limit_sets", &estimate_limit_sets, py::arg("seq"),
        py::arg("params"), py::arg("cfg") = Config{});
  m.def("verify_main_theorem", &verify_main_theorem, py::arg("seq"),
        py::arg("params"), py::arg("cfg") = Config{});

  m.def("parse_lattice_text", &parse_lattice_text, py::arg("text"),
        py::arg("name") = "<input>", py::arg("cfg") = Config{});
  m.def("emit_lattice_text", &emit_lattice_text, py::arg("lattice"));
  m.def("fmt_double", &fmt_double, py::arg("x"));
}
