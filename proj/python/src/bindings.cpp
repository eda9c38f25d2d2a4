#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcuwalk/bessel.hpp"
#include "lcuwalk/errors.hpp"
#include "lcuwalk/harness.hpp"
#include "lcuwalk/hamiltonian.hpp"
#include "lcuwalk/lcu.hpp"
#include "lcuwalk/simulator.hpp"
#include "lcuwalk/walk.hpp"

namespace py = pybind11;
using namespace lcuwalk;

namespace {

Strategy parse_strategy(const std::string& s) {
  if (s == "fixed_z") return Strategy::FixedZ;
  if (s == "tradeoff") return Strategy::Tradeoff;
  throw ParameterError("strategy must be 'fixed_z' or 'tradeoff'");
}

py::dict segment_dict(const SegmentSpec& s) {
  py::dict d;
  d["z"] = s.z;
  d["k"] = s.k;
  d["s"] = s.s;
  d["l"] = s.l_iters;
  d["abs_sum"] = s.abs_sum;
  d["certified"] = s.certified;
  return d;
}

py::dict plan_dict(const SegmentPlan& p) {
  py::dict d;
  d["strategy"] = to_string(p.strategy);
  d["t"] = p.t;
  d["epsilon"] = p.epsilon;
  d["x"] = p.x;
  d["d_pow2"] = p.d_pow2;
  d["shift"] = p.shift;
  d["tau"] = p.tau;
  d["nu_max"] = p.nu_max;
  d["num_segments"] = p.num_segments;
  d["queries"] = p.query_count;
  if (p.num_segments > 0) {
    d["full"] = segment_dict(p.full);
    d["last"] = segment_dict(p.last);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_lcuwalk, m) {
  m.doc() = "Dense verifier for quantum-walk LCU Hamiltonian simulation";

  static py::exception<Error> base(m, "LcuwalkError", PyExc_RuntimeError);
  static py::exception<ParameterError> param(m, "ParameterError", base.ptr());
  static py::exception<CapacityError> capacity(m, "CapacityError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      py::set_error(param, e.what());
    } catch (const CapacityError& e) {
      py::set_error(capacity, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<SparseHamiltonian>(m, "Hamiltonian")
      .def(py::init<int, int, CMatrix>(), py::arg("n"), py::arg("d"), py::arg("entries"))
      .def_property_readonly("n", &SparseHamiltonian::n)
      .def_property_readonly("d", &SparseHamiltonian::d)
      .def_property_readonly("dim", &SparseHamiltonian::dim)
      .def_property_readonly("h_max", &SparseHamiltonian::h_max)
      .def_property_readonly("h_spec", &SparseHamiltonian::h_spec)
      .def_property_readonly("entries", [](const SparseHamiltonian& h) { return CMatrix(h.entries()); })
      .def("to_json", [](const SparseHamiltonian& h) { return to_json(h); })
      .def_static("from_json", &from_json);

  m.def("random_sparse", &make_random_sparse, py::arg("n"), py::arg("d"), py::arg("h_max") = 1.0,
        py::arg("seed") = 1);
  m.def(
      "parity_path",
      [](const std::string& bits, const std::string& variant) {
        return make_parity_path(ParitySpec::from_bits(bits), variant == "H1" ? ParityVariant::H1 : ParityVariant::H2);
      },
      py::arg("bits"), py::arg("variant") = "H2");
  m.def(
      "blown_up_parity",
      [](const std::string& bits, int blowup) { return make_blown_up_parity(ParitySpec::from_bits(bits, blowup)); },
      py::arg("bits"), py::arg("blowup"));

  m.def("bessel_row", &bessel_row, py::arg("z"), py::arg("k"));
  m.def(
      "lcu_coefficients",
      [](double z, int k) {
        const auto c = lcu_coefficients(z, k);
        py::dict d;
        d["a"] = c.a;
        d["abs_sum"] = c.abs_sum;
        d["raw_norm"] = c.raw_norm;
        d["bound"] = c.bound;
        return d;
      },
      py::arg("z"), py::arg("k"));
  m.def("truncation_bound", &truncation_bound, py::arg("z"), py::arg("k"), py::arg("nu_max") = 1.0);
  m.def("abs_sum_estimate", &abs_sum_estimate, py::arg("z"));
  m.def("choose_k", &choose_k, py::arg("z"), py::arg("delta"), py::arg("nu_max") = 1.0,
        py::arg("k_limit") = 10000);
  m.def(
      "solve_s_l",
      [](double a) {
        const auto sl = solve_s_l(a);
        return py::make_tuple(sl.s, sl.l_iters);
      },
      py::arg("a"));

  m.def(
      "walk_spectrum",
      [](const SparseHamiltonian& h) {
        const auto r = spectral_check(WalkSystem(h), 1.0);
        return py::make_tuple(r.max_mismatch, r.max_residual);
      },
      py::arg("h"), "Largest eigenvalue mismatch and eigenvector residual of the walk.");

  m.def(
      "exact_evolution", [](const SparseHamiltonian& h, double t) { return exact_evolution(h, t); },
      py::arg("h"), py::arg("t"));
  m.def(
      "plan",
      [](const SparseHamiltonian& h, double t, double eps, const std::string& strategy, double alpha) {
        return plan_dict(plan_segments(h, t, eps, parse_strategy(strategy), alpha));
      },
      py::arg("h"), py::arg("t"), py::arg("eps"), py::arg("strategy") = "fixed_z", py::arg("alpha") = 1.0);
  m.def(
      "simulate",
      [](const SparseHamiltonian& h, double t, double eps, const std::string& strategy, double alpha) {
        SimulationReport r;
        {
          py::gil_scoped_release release;
          r = run(h, plan_segments(h, t, eps, parse_strategy(strategy), alpha));
        }
        py::dict d;
        d["plan"] = plan_dict(r.plan);
        d["effective"] = r.effective;
        d["spectral_error"] = r.spectral_error;
        d["diamond_bound"] = r.diamond_bound;
        d["queries"] = r.queries;
        d["oracle_queries"] = r.oracle_queries;
        d["walk_rank"] = r.walk_rank;
        d["wall_ms"] = r.wall_ms;
        return d;
      },
      py::arg("h"), py::arg("t"), py::arg("eps"), py::arg("strategy") = "fixed_z", py::arg("alpha") = 1.0);
  m.def("combined_lower_bound", &combined_lower_bound, py::arg("t"), py::arg("d"), py::arg("eps"));
  m.def(
      "verify",
      [](const std::string& suite) {
        const auto r = harness::verify(suite);
        return py::make_tuple(r.pass(), r.text());
      },
      py::arg("suite") = "all");
}
