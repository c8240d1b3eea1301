#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "steerkit/error.hpp"
#include "steerkit/geometry.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"

namespace py = pybind11;
using namespace steerkit;

namespace {

py::list members_as_arrays(const Assemblage& a) {
  py::list rows;
  for (const auto& row : a.members()) {
    py::list r;
    for (const auto& m : row) r.append(ComplexMatrix(m.matrix()));
    rows.append(r);
  }
  return rows;
}

sdp::SolverOptions solver_options(double gap_tol, double feas_tol, int max_iter) {
  sdp::SolverOptions o;
  o.gap_tol = gap_tol;
  o.feas_tol = feas_tol;
  o.max_iter = max_iter;
  return o;
}

SurfaceOptions surface_options(int jobs) {
  SurfaceOptions o;
  o.jobs = jobs;
  return o;
}

py::array_t<double> points_array(const PointCloud& c) {
  py::array_t<double> out({static_cast<py::ssize_t>(c.points.size()), py::ssize_t{3}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    v(i, 0) = c.points[i].x;
    v(i, 1) = c.points[i].y;
    v(i, 2) = c.points[i].z;
  }
  return out;
}

py::dict witness_dict(const VolumeWitness& w) {
  py::dict d;
  d["delta"] = w.delta;
  d["v_qse"] = w.v_qse;
  d["v_lhs"] = w.v_lhs;
  d["convergence_gap"] = w.convergence_gap;
  d["fires"] = w.fires();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steering bounds, steering ellipsoids and LHS surfaces for two-qubit states";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());

  py::class_<TwoQubitState>(m, "TwoQubitState")
      .def(py::init([](const ComplexMatrix& rho) { return TwoQubitState(HermitianMatrix(rho)); }), py::arg("rho"))
      .def_property_readonly("matrix", [](const TwoQubitState& s) { return ComplexMatrix(s.matrix().matrix()); })
      .def_property_readonly("alice", [](const TwoQubitState& s) { return ComplexMatrix(s.alice().matrix()); })
      .def_property_readonly("bob", [](const TwoQubitState& s) { return ComplexMatrix(s.bob().matrix()); })
      .def("correlation_matrix", &TwoQubitState::correlation_matrix);

  m.def("werner", &werner, py::arg("p"));
  m.def("horodecki", &horodecki, py::arg("p"));
  m.def("bell_diagonal_rank2", &bell_diagonal_rank2, py::arg("p"));

  py::class_<Assemblage>(m, "Assemblage")
      .def(py::init([](const std::vector<std::vector<ComplexMatrix>>& members, std::vector<double> weights) {
             std::vector<std::vector<HermitianMatrix>> h;
             for (const auto& row : members) {
               auto& r = h.emplace_back();
               for (const auto& x : row) r.emplace_back(x);
             }
             return Assemblage(std::move(h), std::move(weights));
           }),
           py::arg("members"), py::arg("input_weights") = std::vector<double>{})
      .def_property_readonly("n_inputs", &Assemblage::n_inputs)
      .def_property_readonly("n_outcomes", &Assemblage::n_outcomes)
      .def_property_readonly("input_weights", &Assemblage::input_weights)
      .def_property_readonly("members", &members_as_arrays)
      .def_property_readonly("reduced_state", [](const Assemblage& a) { return ComplexMatrix(a.reduced_state().matrix()); });

  m.def(
      "assemblage_from_state",
      [](const TwoQubitState& rho, std::optional<Eigen::Matrix3d> rotation) {
        return assemblage_from_state(rho, rotation ? mub_triad(*rotation) : pauli_triad());
      },
      py::arg("state"), py::arg("rotation") = py::none(),
      "Assemblage from projective measurements along the columns of `rotation` (Pauli axes by default).");

  m.def(
      "bounds",
      [](const Assemblage& a, double gap_tol, double feas_tol, int max_iter) {
        const auto r = bounds(a, solver_options(gap_tol, feas_tol, max_iter));
        py::dict d;
        d["s_min"] = r.s_min;
        d["s_max"] = r.s_max;
        d["s_max_r"] = r.s_max_restricted;
        d["t_rncsr"] = r.t_rncsr;
        d["t_csr"] = r.t_csr;
        d["closest_rncsr"] = members_as_arrays(r.closest_rncsr_assemblage);
        d["closest_csr"] = members_as_arrays(r.closest_csr_assemblage);
        return d;
      },
      py::arg("assemblage"), py::arg("gap_tol") = 1e-9, py::arg("feas_tol") = 1e-9, py::arg("max_iter") = 200);

  m.def(
      "qse",
      [](const TwoQubitState& rho) {
        const auto e = qse(rho);
        py::dict d;
        d["center"] = e.center.vec();
        d["semiaxes"] = e.semiaxes;
        d["orientation"] = e.orientation;
        d["matrix"] = e.matrix;
        d["volume"] = ellipsoid_volume(e);
        return d;
      },
      py::arg("state"));

  m.def(
      "lhs_surface",
      [](const TwoQubitState& rho, int n_samples, std::uint64_t seed, int jobs) {
        const auto c = lhs_surface(rho, n_samples, seed, surface_options(jobs));
        return py::make_tuple(points_array(c), c.triad_ids);
      },
      py::arg("state"), py::arg("n_samples"), py::arg("seed") = 0, py::arg("jobs") = 1,
      "Returns (points, triad_ids) with points an (N, 3) array.");

  m.def(
      "delta_v",
      [](const TwoQubitState& rho, int n_samples, std::uint64_t seed, int jobs) {
        return witness_dict(delta_v(rho, n_samples, seed, surface_options(jobs)));
      },
      py::arg("state"), py::arg("n_samples"), py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def(
      "hull_volume",
      [](const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor>& pts) {
        std::vector<Eigen::Vector3d> v;
        for (Eigen::Index i = 0; i < pts.rows(); ++i) v.emplace_back(pts.row(i).transpose());
        return hull_volume(v);
      },
      py::arg("points"));
}
