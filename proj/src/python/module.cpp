#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "bmslab/fockspace.hpp"
#include "bmslab/permoracle.hpp"
#include "bmslab/quasipoly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/spectral.hpp"
#include "bmslab/toporec.hpp"

namespace py = pybind11;

using bmslab::exactmath::Rat;

namespace {

py::object fraction(const Rat& r) {
  return py::module_::import("fractions").attr("Fraction")(r.str());
}

Rat dispatch(const std::string& route, int m, int g,
             const std::vector<long>& mu, int jobs) {
  if (route == "brute") {
    return bmslab::permoracle::bms_connected_bruteforce(m, g, mu, jobs);
  }
  if (route == "fock") {
    return bmslab::fockspace::bms_fock(m, g, mu);
  }
  if (route == "genus0") {
    if (g != 0) throw std::invalid_argument("route genus0 requires g == 0");
    return bmslab::permoracle::genus0_formula(m, mu);
  }
  if (route == "unstable") {
    if (g != 0) throw std::invalid_argument("route unstable requires g == 0");
    if (mu.size() == 1) return bmslab::permoracle::unstable_onepoint(m, mu[0]);
    if (mu.size() == 2) {
      return bmslab::permoracle::unstable_twopoint(m, mu[0], mu[1]);
    }
    throw std::invalid_argument("route unstable needs one or two parts");
  }
  throw std::invalid_argument("unknown route: " + route);
}

}  // namespace

PYBIND11_MODULE(_bmslab, mod) {
  mod.doc() = "exact branched-cover counts and their closed forms";
  mod.attr("__version__") = "0.1.0";

  mod.def(
      "count",
      [](int m, int g, const std::vector<long>& mu, const std::string& route,
         int jobs) { return fraction(dispatch(route, m, g, mu, jobs)); },
      py::arg("m"), py::arg("g"), py::arg("mu"), py::arg("route") = "fock",
      py::arg("jobs") = 0,
      "Count for the given degree profile, as a Fraction.");

  mod.def(
      "fit_json",
      [](int m, int g, int n) {
        return bmslab::quasipoly::fit_poly(m, g, n).to_json();
      },
      py::arg("m"), py::arg("g"), py::arg("n"),
      "Interpolated count form, serialized as JSON.");

  mod.def(
      "xi_coefficients",
      [](int m, int i, int order) {
        bmslab::exactmath::XSeries s = bmslab::spectral::xi_series(m, i, order);
        std::vector<py::object> out;
        out.reserve(static_cast<size_t>(order) + 1);
        for (int k = 0; k <= order; ++k) out.push_back(fraction(s.coeff(k)));
        return out;
      },
      py::arg("m"), py::arg("i"), py::arg("order"),
      "Expansion coefficients of the xi series, as Fractions.");

  mod.def(
      "recursion_matches_counts",
      [](int g, int n, long mu_max) {
        return bmslab::toporec::expand_and_compare(g, n, mu_max).pass;
      },
      py::arg("g"), py::arg("n"), py::arg("mu_max"),
      "Whether the recursion output equals the counts up to mu_max.");
}
