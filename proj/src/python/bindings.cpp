#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darboux/catalog.hpp"
#include "darboux/checks.hpp"
#include "darboux/montecarlo.hpp"
#include "darboux/special_functions.hpp"
#include "darboux/transform.hpp"

namespace py = pybind11;
using namespace darboux;

PYBIND11_MODULE(_darboux, m) {
    m.doc() = "Darboux transforms of killed one-dimensional diffusions";

    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("hermite_poly", &hermite_poly, py::arg("n"), py::arg("x"));
    m.def("qn_poly", &Qn_poly, py::arg("n"), py::arg("y"),
          "Wronskian polynomial of the quadratic-rate model, degree n+3");

    py::class_<ExampleModel>(m, "Example")
        .def_readonly("id", &ExampleModel::id)
        .def_readonly("description", &ExampleModel::description)
        .def_readonly("gamma", &ExampleModel::gamma)
        .def_readonly("m_h", &ExampleModel::m_h)
        .def_property_readonly("lam",
                               [](const ExampleModel& m) { return m.seed.lambda; })
        .def("h", [](const ExampleModel& m, double y) { return m.seed.h(y); }, py::arg("y"))
        .def("tilde_c",
             [](const ExampleModel& m, double y) { return m.spec_Ytilde.killing(y); },
             py::arg("y"))
        .def("p_y", [](const ExampleModel& m, double t, double x,
                       double y) { return pY_eval(m, t, x, y); },
             py::arg("t"), py::arg("x"), py::arg("y"))
        .def("p_ytilde",
             [](const ExampleModel& m, double t, double x, double y) {
                 return pYtilde_eval(m, t, x, y);
             },
             py::arg("t"), py::arg("x"), py::arg("y"))
        .def("spectral",
             [](const ExampleModel& m, double t, double x, double y, double tol) {
                 return spectral_eval(m, t, x, y, tol);
             },
             py::arg("t"), py::arg("x"), py::arg("y"), py::arg("tol") = 1e-9)
        .def("construction_density",
             [](const ExampleModel& m, double t, double x, double y) {
                 return darboux_density(m.pY, m.seed, m.m_h, t, x, y);
             },
             py::arg("t"), py::arg("x"), py::arg("y"),
             "quadrature + finite-difference route, independent of the closed form")
        .def("invariance_residual",
             [](const ExampleModel& m, double t, double x) {
                 return verify_lambda_invariance(m.pY, m.seed, t, x, 1e-6).residual;
             },
             py::arg("t"), py::arg("x"))
        .def("__repr__",
             [](const ExampleModel& m) { return "<Example " + m.id + ">"; });

    m.def("make_example", &make_example, py::arg("id"),
          py::arg("gamma") = std::numeric_limits<double>::quiet_NaN());
    m.def("catalog_ids", [] { return catalog_ids(); });

    m.def(
        "simulate_survival",
        [](const ExampleModel& model, double x0, double t, long paths, double dt,
           std::uint64_t seed) {
            SimConfig cfg{dt, paths, seed, 0};
            return simulate_paths(model.spec_Ytilde, x0, t, cfg).survival_fraction();
        },
        py::arg("example"), py::arg("x0"), py::arg("t"), py::arg("paths") = 20000,
        py::arg("dt") = 1e-3, py::arg("seed") = 12345,
        "survival fraction of the transformed process by Euler-Maruyama");

    m.def(
        "run_suite",
        [](const std::string& suite, const std::string& example, long paths, double dt,
           std::uint64_t seed) {
            CheckOptions opts;
            opts.example = example;
            opts.mc_paths = paths;
            opts.mc_dt = dt;
            opts.mc_seed = seed;
            py::list out;
            for (const CheckResult& r : run_suite(suite, opts)) {
                py::dict d;
                d["name"] = r.name;
                d["residual"] = r.residual;
                d["tolerance"] = r.tolerance;
                d["passed"] = r.passed;
                d["note"] = r.note;
                out.append(d);
            }
            return out;
        },
        py::arg("suite"), py::arg("example") = "", py::arg("paths") = 100000,
        py::arg("dt") = 1e-3, py::arg("seed") = 12345);

    m.def("suite_names", [] { return suite_names(); });
}
