#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "curvesolve/continuation.hpp"
#include "curvesolve/curve.hpp"
#include "curvesolve/harmonics.hpp"
#include "curvesolve/metric.hpp"
#include "curvesolve/solver.hpp"
#include "curvesolve/verify.hpp"

namespace py = pybind11;
using namespace curvesolve;

namespace {

Eigen::MatrixX3d curve_matrix(const DiscreteCurve& c) {
  Eigen::MatrixX3d m(c.size(), 3);
  for (int i = 0; i < c.size(); ++i) m.row(i) = c.nodes()[i];
  return m;
}

DiscreteCurve curve_from_matrix(const Eigen::MatrixX3d& m) {
  std::vector<Vec3> nodes(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) nodes[i] = m.row(i);
  return DiscreteCurve(std::move(nodes));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "curves of prescribed geodesic curvature on conformal spheres";

  py::class_<HarmonicTerm>(mod, "HarmonicTerm")
      .def(py::init<int, int, double>(), py::arg("l"), py::arg("m"), py::arg("coeff"))
      .def_readonly("l", &HarmonicTerm::l)
      .def_readonly("m", &HarmonicTerm::m)
      .def_readonly("coeff", &HarmonicTerm::coeff);

  mod.def("real_sph_harm", &real_sph_harm, py::arg("l"), py::arg("m"), py::arg("p"));
  mod.def("rotate90", &rotate90, py::arg("p"), py::arg("v"));

  py::class_<ConformalMetric>(mod, "ConformalMetric")
      .def(py::init<std::vector<HarmonicTerm>, double, int>(), py::arg("terms"),
           py::arg("t"), py::arg("validation_resolution") = 48)
      .def_static("round", &ConformalMetric::round)
      .def("with_t", &ConformalMetric::with_t)
      .def_property_readonly("t", &ConformalMetric::t)
      .def("phi", &ConformalMetric::phi)
      .def("laplace_phi", &ConformalMetric::laplace_phi)
      .def("grad_phi", &ConformalMetric::grad_phi)
      .def("gauss_curvature", &ConformalMetric::gauss_curvature)
      .def("conformal_factor", &ConformalMetric::conformal_factor)
      .def("speed", &ConformalMetric::speed)
      .def("min_gauss_curvature", &ConformalMetric::min_gauss_curvature,
           py::arg("grid_resolution") = 64)
      .def("family_min_curvature", &ConformalMetric::family_min_curvature,
           py::arg("grid_resolution") = 48);

  py::class_<DiscreteCurve>(mod, "DiscreteCurve")
      .def(py::init(&curve_from_matrix), py::arg("nodes"))
      .def_property_readonly("nodes", &curve_matrix)
      .def("__len__", &DiscreteCurve::size);

  py::class_<SegmentContact>(mod, "SegmentContact")
      .def_readonly("seg_a", &SegmentContact::seg_a)
      .def_readonly("seg_b", &SegmentContact::seg_b)
      .def_readonly("distance", &SegmentContact::distance)
      .def_readonly("crossing", &SegmentContact::crossing);

  py::class_<EmbeddingReport>(mod, "EmbeddingReport")
      .def_readonly("embedded", &EmbeddingReport::embedded)
      .def_readonly("contacts", &EmbeddingReport::contacts);

  mod.def("seed_circle", &seed_circle, py::arg("kappa"), py::arg("axis"),
          py::arg("n") = 256);
  mod.def("resample_constant_speed", &resample_constant_speed, py::arg("curve"),
          py::arg("metric"));
  mod.def("geodesic_curvature", &geodesic_curvature, py::arg("curve"), py::arg("metric"));
  mod.def("curve_length", &curve_length, py::arg("curve"), py::arg("metric"));
  mod.def("segment_speed_variation", &segment_speed_variation, py::arg("curve"),
          py::arg("metric"));
  mod.def("node_speed_variation", &node_speed_variation, py::arg("curve"),
          py::arg("metric"));
  mod.def("self_intersects", &self_intersects, py::arg("curve"),
          py::arg("clearance") = 1e-4);
  mod.def("aligned_distance", &aligned_distance, py::arg("a"), py::arg("b"));
  mod.def("winding_number", &winding_number, py::arg("curve"), py::arg("q"));
  mod.def("enclosed_gauss_integral", &enclosed_gauss_integral, py::arg("curve"),
          py::arg("metric"), py::arg("grid_resolution") = 128);

  py::class_<CurvatureSpec>(mod, "CurvatureSpec")
      .def(py::init<double, double>(), py::arg("constant"), py::arg("scale") = 1.0)
      .def(py::init<double, std::vector<HarmonicTerm>, double, int>(), py::arg("offset"),
           py::arg("terms"), py::arg("scale") = 1.0,
           py::arg("validation_resolution") = 48)
      .def("value", &CurvatureSpec::value)
      .def("base", &CurvatureSpec::base)
      .def("with_scale", &CurvatureSpec::with_scale)
      .def_property_readonly("scale", &CurvatureSpec::scale)
      .def("max_value", &CurvatureSpec::max_value, py::arg("grid_resolution") = 48);

  py::class_<SolverOptions>(mod, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("max_iter", &SolverOptions::max_iter)
      .def_readwrite("damping", &SolverOptions::damping)
      .def_readwrite("newton", &SolverOptions::newton)
      .def_readwrite("newton_threshold", &SolverOptions::newton_threshold)
      .def_readwrite("embeddedness_monitor", &SolverOptions::embeddedness_monitor)
      .def_readwrite("clearance", &SolverOptions::clearance)
      .def_readwrite("fd_step", &SolverOptions::fd_step);

  py::enum_<SolveStatus>(mod, "SolveStatus")
      .value("converged", SolveStatus::converged)
      .value("max_iter_exceeded", SolveStatus::max_iter_exceeded)
      .value("degenerated", SolveStatus::degenerated)
      .value("embedding_lost", SolveStatus::embedding_lost);

  py::class_<SolveDiagnostics>(mod, "SolveDiagnostics")
      .def_readonly("status", &SolveDiagnostics::status)
      .def_readonly("iterations", &SolveDiagnostics::iterations)
      .def_readonly("residual_norm", &SolveDiagnostics::residual_norm)
      .def_readonly("curvature_error", &SolveDiagnostics::curvature_error)
      .def_readonly("message", &SolveDiagnostics::message);

  py::class_<SolveResult>(mod, "SolveResult")
      .def_property_readonly("curve", [](const SolveResult& r) { return r.curve; })
      .def_readonly("diagnostics", &SolveResult::diagnostics)
      .def("ok", &SolveResult::ok);

  mod.def("residual", &residual, py::arg("curve"), py::arg("metric"), py::arg("spec"));
  mod.def("sobolev_field", &sobolev_field, py::arg("curve"), py::arg("r"));
  mod.def("solve_zero", &solve_zero, py::arg("curve"), py::arg("metric"),
          py::arg("spec"), py::arg("options") = SolverOptions{});

  py::class_<Diagnostics>(mod, "Diagnostics")
      .def_readonly("length", &Diagnostics::length)
      .def_readonly("lambda1", &Diagnostics::lambda1)
      .def_readonly("min_gauss_curvature", &Diagnostics::min_gauss_curvature)
      .def_readonly("length_bound", &Diagnostics::length_bound)
      .def_readonly("gauss_bonnet_residual", &Diagnostics::gauss_bonnet_residual)
      .def_readonly("max_curvature_error", &Diagnostics::max_curvature_error)
      .def_readonly("embedded", &Diagnostics::embedded)
      .def_readonly("speed_variation", &Diagnostics::speed_variation)
      .def_readonly("notes", &Diagnostics::notes)
      .def("all_ok", &Diagnostics::all_ok, py::arg("tol") = 1e-8);

  mod.def("first_eigenvalue", &first_eigenvalue, py::arg("length"));
  mod.def("certify", &certify, py::arg("curve"), py::arg("metric"), py::arg("spec"),
          py::arg("grid_resolution") = 64, py::arg("clearance") = 1e-4);

  py::enum_<BranchStatus>(mod, "BranchStatus")
      .value("complete", BranchStatus::complete)
      .value("step_collapse", BranchStatus::step_collapse)
      .value("monitor_violation", BranchStatus::monitor_violation);

  py::class_<BranchState>(mod, "BranchState")
      .def_readonly("t", &BranchState::t)
      .def_readonly("s", &BranchState::s)
      .def_readonly("diagnostics", &BranchState::diagnostics)
      .def_property_readonly("curve", [](const BranchState& b) { return b.curve; });

  py::class_<Branch>(mod, "Branch")
      .def_readonly("states", &Branch::states)
      .def_readonly("seed_id", &Branch::seed_id)
      .def_readonly("status", &Branch::status)
      .def_readonly("message", &Branch::message)
      .def("complete", &Branch::complete);

  py::class_<Monitors>(mod, "Monitors")
      .def(py::init<>())
      .def_readwrite("length_bound", &Monitors::length_bound)
      .def_readwrite("embeddedness", &Monitors::embeddedness)
      .def_readwrite("convexity", &Monitors::convexity)
      .def_readwrite("speed", &Monitors::speed);

  py::class_<ContinuationSchedule>(mod, "ContinuationSchedule")
      .def_static("l_shaped", &ContinuationSchedule::l_shaped, py::arg("s_target"),
                  py::arg("s_steps") = 21, py::arg("t_steps") = 41)
      .def_readwrite("path", &ContinuationSchedule::path)
      .def_readwrite("min_step", &ContinuationSchedule::min_step)
      .def_readwrite("monitors", &ContinuationSchedule::monitors)
      .def_readwrite("continuity_threshold", &ContinuationSchedule::continuity_threshold)
      .def_readwrite("clearance", &ContinuationSchedule::clearance)
      .def_readwrite("grid_resolution", &ContinuationSchedule::grid_resolution);

  mod.def("continue_path", &continue_path, py::arg("seed"), py::arg("metric"),
          py::arg("spec"), py::arg("schedule"), py::arg("options") = SolverOptions{},
          py::arg("seed_id") = "seed");

  py::class_<TwoBranchResult>(mod, "TwoBranchResult")
      .def_readonly("branch_a", &TwoBranchResult::branch_a)
      .def_readonly("branch_b", &TwoBranchResult::branch_b)
      .def_readonly("distinctness", &TwoBranchResult::distinctness)
      .def_readonly("success", &TwoBranchResult::success)
      .def_readonly("merged_warning", &TwoBranchResult::merged_warning);

  mod.def("two_branch_run", &two_branch_run, py::arg("metric"), py::arg("spec"),
          py::arg("axis_a"), py::arg("axis_b"), py::arg("schedule"),
          py::arg("options") = SolverOptions{}, py::arg("separation_threshold") = 0.1,
          py::arg("nodes") = 256, py::arg("parallel") = false);
}
