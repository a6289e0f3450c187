#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dfh/heights.hpp"
#include "dfh/jobs.hpp"
#include "dfh/mahler.hpp"

namespace py = pybind11;
using namespace dfh;

namespace {

Rat parse(const std::string& s) { return parse_rational(s); }

QPoly qpoly_of(const std::vector<std::string>& coeffs) {
    std::vector<Rat> c;
    c.reserve(coeffs.size());
    for (const auto& s : coeffs) c.push_back(parse_rational(s));
    return QPoly(std::move(c));
}

}  // namespace

PYBIND11_MODULE(dfh_py, m) {
    m.doc() = "exact heights, recurrences and rationality certificates for D-finite series";

    m.def(
        "multiplicative_height",
        [](const std::string& a) { return to_string(multiplicative_height(parse(a))); },
        "exact multiplicative Weil height H(p/q) = max(|p|, q)", py::arg("a"));

    m.def(
        "log_height", [](const std::string& a) { return height_rational(parse(a)).log_mid(); },
        "h = log H as a double", py::arg("a"));

    m.def(
        "affine_height",
        [](const std::vector<std::string>& tuple) {
            std::vector<Rat> v;
            for (const auto& s : tuple) v.push_back(parse(s));
            return to_string(multiplicative_height_affine(v));
        },
        "exact multiplicative height of the point (1, a_0, ..., a_n)", py::arg("tuple"));

    m.def(
        "log_mahler_measure",
        [](const std::vector<std::string>& coeffs) {
            auto e = log_mahler_measure(qpoly_of(coeffs));
            return py::make_tuple(e.lo, e.hi);
        },
        "certified enclosure of log M(p), coefficients ascending", py::arg("coeffs"));

    m.def(
        "algebraic_height",
        [](const std::vector<std::string>& coeffs) {
            auto e = algebraic_height(qpoly_of(coeffs));
            return py::make_tuple(e.lo, e.hi);
        },
        "certified enclosure of the height of a root of the given minimal polynomial",
        py::arg("coeffs"));

    m.def(
        "run_job",
        [](const std::string& command, const std::string& input, long T, long modulus,
           long residue, const std::string& u) {
            json in;
            try {
                in = json::parse(input);
            } catch (const std::exception& e) {
                throw py::value_error(std::string("input: invalid JSON: ") + e.what());
            }
            JobParams p;
            p.T = T;
            p.modulus = modulus;
            p.residue = residue;
            p.u = u;
            try {
                return run_command(command, in, p).dump(2);
            } catch (const schema_error& e) {
                throw py::value_error(e.what());
            }
        },
        "run a CLI-equivalent job on a JSON input string; returns the JSON report",
        py::arg("command"), py::arg("input"), py::arg("T") = -1, py::arg("modulus") = -1,
        py::arg("residue") = -1, py::arg("u") = "");
}
