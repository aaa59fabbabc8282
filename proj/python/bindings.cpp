// SPDX-License-Identifier: Apache-2.0
// Thin Python view of the library: identity checks, metrics, spectra, screen profiles.
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kvnlab/bessel.hpp"
#include "kvnlab/checks.hpp"
#include "kvnlab/config.hpp"
#include "kvnlab/dynamics.hpp"
#include "kvnlab/gauge.hpp"
#include "kvnlab/metric.hpp"

namespace py = pybind11;
using namespace kvn;

namespace {

std::vector<Poly> parse_all(const std::vector<std::string>& src, int n) {
    std::vector<Poly> out;
    for (const auto& s : src) out.push_back(Poly::parse(s, n));
    return out;
}

py::list as_list(const CheckList& cl) {
    py::list out;
    for (const auto& c : cl) out.append(py::make_tuple(c.name, c.residual, c.pass));
    return out;
}

py::list as_list(const SpectrumResult& s) {
    py::list out;
    for (const auto& l : s.levels) out.append(py::make_tuple(l.label, l.value, l.degeneracy));
    return out;
}

}  // namespace

PYBIND11_MODULE(_kvnlab, m) {
    m.attr("__version__") = version_tag();

    m.def("grassmann_checks", [](int n, double tol) { return as_list(grassmann_checks(n, tol)); }, py::arg("n"),
          py::arg("tol") = 1e-12, "list of (name, residual, pass) for the anticommutators at n degrees of freedom");
    m.def("cartan_checks",
          [](int n, const std::vector<std::string>& hs, double tol) { return as_list(cartan_checks(n, parse_all(hs, n), tol)); },
          py::arg("n"), py::arg("hamiltonians") = std::vector<std::string>{}, py::arg("tol") = 1e-12);
    m.def("charge_checks",
          [](int n, const std::vector<std::string>& hs, double beta, double tol) {
              return as_list(charge_checks(n, parse_all(hs, n), beta, tol));
          },
          py::arg("n"), py::arg("hamiltonians") = std::vector<std::string>{}, py::arg("beta") = 1.0, py::arg("tol") = 1e-12);
    m.def("bracket_checks", [](std::uint64_t seed) { return as_list(bracket_checks(seed)); }, py::arg("seed") = 1);

    m.def("metric_matrix",
          [](const std::string& kind, int n, double b, double theta, double gamma) {
              return build_metric(parse_metric_kind(kind), n, MetricParams{b, theta, gamma}).g;
          },
          py::arg("kind"), py::arg("n") = 1, py::arg("b") = -1.0, py::arg("theta") = 0.0, py::arg("gamma") = 0.0,
          "metric g in the tensor basis");
    m.def("metric_eigenvalues",
          [](const std::string& kind, double b, double theta, double gamma) {
              const auto e = metric_eigenvalues(build_metric(parse_metric_kind(kind), 1, MetricParams{b, theta, gamma}));
              return py::make_tuple(e.values, e.classification);
          },
          py::arg("kind"), py::arg("b") = -1.0, py::arg("theta") = 0.0, py::arg("gamma") = 0.0);
    m.def("hermiticity_residual",
          [](const std::string& H, const std::string& kind, double b) {
              return hermiticity_report(Poly::parse(H, 1), build_metric(parse_metric_kind(kind), 1, MetricParams{.b = b})).residual;
          },
          py::arg("hamiltonian"), py::arg("kind"), py::arg("b") = -1.0);

    m.def("two_slit",
          [](double x_A, const std::string& mode) {
              SlitConfig c;
              c.x_A = x_A;
              c.validate();
              const auto P = two_slit(c, parse_slit_mode(mode));
              return py::make_tuple(P.x, P.P);
          },
          py::arg("x_A") = 0.5, py::arg("mode") = "quantum", "screen profile (x, P)");
    m.def("count_minima", &count_minima, py::arg("P"), py::arg("floor") = 1e-6);

    m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
    m.def("bessel_zero", &standard_bessel_zero, py::arg("nu"), py::arg("k"), "k-th positive zero of J_nu");

    m.def("landau_spectrum", [](double B, int n_tr, double mass) { return as_list(landau_spectrum(B, n_tr, mass)); },
          py::arg("B"), py::arg("n_tr"), py::arg("m") = 1.0, "(label, eigenvalue, degeneracy) for the truncated Liouvillian");
    m.def("landau_quantum",
          [](double B, int n, double hbar, double mass, double pz) { return as_list(landau_quantum(B, n, hbar, mass, pz)); },
          py::arg("B"), py::arg("n_levels"), py::arg("hbar") = 1.0, py::arg("m") = 1.0, py::arg("pz") = 0.0);
    m.def("ab_levels",
          [](double alpha, double b, const std::vector<std::pair<int, int>>& levels) {
              py::list out;
              const auto r = ab_spectra(alpha, b, levels);
              for (const auto& l : r.levels) out.append(py::make_tuple(l.k, l.m, l.zero, l.coefficient, l.energy));
              return py::make_tuple(out, r.classical_max_diff);
          },
          py::arg("alpha"), py::arg("b") = 1.0, py::arg("levels") = std::vector<std::pair<int, int>>{{2, 1}},
          "([(k, m, zero, coefficient, energy)], classical max difference)");

    m.def("free_moments",
          [](double a, double b, double p_i, double t, int count) {
              const Axis q = Axis::make("q", -12, 24, count), p = Axis::make("p", -6, 10, count);
              const auto mo = moments(liouville_evolve(HamiltonianSpec::free_particle(), double_gaussian(a, b, p_i), q, p, t));
              return py::make_tuple(mo.mean0, mo.mean1, mo.var0, mo.var1, mo.norm);
          },
          py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("p_i") = 0.0, py::arg("t") = 1.0, py::arg("count") = 256,
          "(q mean, p mean, q var, p var, norm) of a KvN double Gaussian after free flight");

    py::register_exception<ConfigError>(m, "ConfigError");
}
