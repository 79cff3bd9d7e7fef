#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qp/suites.hpp"

namespace py = pybind11;
using namespace qp;

namespace {

Rat rat_from(const std::string& text) { return parse_rat(text); }

Place place_from(const std::string& text) {
    if (text == "inf") return Place::infinity();
    return Place::at_prime(std::stol(text));
}

py::dict circle_dict(const ExactCircle& c) {
    py::dict d;
    d["mag2"] = to_string(c.mag2());
    d["phase"] = to_string(c.phase());
    d["value"] = c.to_complex();
    return d;
}

QuadraticAction make_action(const std::string& system, const std::string& m, const std::string& g,
                            const std::string& omega, const std::string& t0, const std::string& t1,
                            const std::string& place, long target) {
    const Place v = place_from(place);
    if (system == "free") return free_particle(rat_from(m), rat_from(t0), rat_from(t1));
    if (system == "field") {
        return constant_field(rat_from(m), rat_from(g), rat_from(t0), rat_from(t1));
    }
    if (system == "oscillator") {
        return harmonic_oscillator(rat_from(m), rat_from(omega), rat_from(t0), rat_from(t1),
                                   v.p(), target);
    }
    throw Error("UnknownSystem", "no system named '" + system + "'");
}

}  // namespace

PYBIND11_MODULE(_qpadic, mod) {
    mod.doc() = "Exact p-adic and real propagators for quadratic actions";

    py::register_exception<Error>(mod, "DomainError");

    mod.def(
        "valuation",
        [](const std::string& x, long p) {
            const long v = valuation(rat_from(x), p);
            return v == kValInfinity ? py::object(py::none()) : py::object(py::int_(v));
        },
        py::arg("x"), py::arg("p"));
    mod.def(
        "norm", [](const std::string& x, const std::string& place) {
            return to_string(norm(rat_from(x), place_from(place)));
        },
        py::arg("x"), py::arg("place"));
    mod.def(
        "frac_part",
        [](const std::string& x, long p) { return to_string(frac_part(rat_from(x), p)); },
        py::arg("x"), py::arg("p"));
    mod.def(
        "digits",
        [](const std::string& x, long p, int count) {
            const PadicDigits d = digits(rat_from(x), p, count);
            return py::make_tuple(d.valuation, d.digit);
        },
        py::arg("x"), py::arg("p"), py::arg("count") = 8);
    mod.def(
        "lambda_fn",
        [](const std::string& x, const std::string& place) {
            return circle_dict(lambda_fn(rat_from(x), place_from(place)));
        },
        py::arg("x"), py::arg("place"));
    mod.def(
        "character",
        [](const std::string& x, const std::string& place) {
            return circle_dict(character(rat_from(x), place_from(place)));
        },
        py::arg("x"), py::arg("place"));
    mod.def(
        "gauss_closed",
        [](const std::string& alpha, const std::string& beta, const std::string& place) {
            return circle_dict(gauss_closed(rat_from(alpha), rat_from(beta), place_from(place)));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("place"));
    mod.def(
        "gauss_brute",
        [](const std::string& alpha, const std::string& beta, long p, double tol) {
            return gauss_stabilized(rat_from(alpha), rat_from(beta), p, tol);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("p"), py::arg("tol") = 1e-9);
    mod.def(
        "kernel",
        [](const std::string& system, const std::string& place, const std::string& x1,
           const std::string& x0, const std::string& m, const std::string& g,
           const std::string& omega, const std::string& t0, const std::string& t1,
           const std::string& h, long target) {
            const Place v = place_from(place);
            const QuadraticAction s = make_action(system, m, g, omega, t0, t1, place, target);
            return circle_dict(kernel_at(KernelSpec{s, v, rat_from(h)}, rat_from(x1),
                                         rat_from(x0)));
        },
        py::arg("system"), py::arg("place"), py::arg("x1"), py::arg("x0"), py::arg("m") = "1",
        py::arg("g") = "1", py::arg("omega") = "", py::arg("t0") = "0", py::arg("t1") = "1",
        py::arg("h") = "1", py::arg("target") = 12);
    mod.def(
        "run_suite",
        [](const std::string& name, unsigned long long seed, int count, double tol) {
            SuiteConfig cfg;
            cfg.seed = seed;
            cfg.count = count;
            cfg.tol = tol;
            py::list out;
            for (const CheckResult& r : run_suite(name, cfg)) {
                py::dict d;
                d["check"] = r.check;
                d["inputs"] = r.inputs;
                d["expected"] = r.expected;
                d["got"] = r.got;
                d["tol"] = r.tol;
                d["status"] = r.pass ? "pass" : "fail";
                out.append(d);
            }
            return out;
        },
        py::arg("name"), py::arg("seed") = 42, py::arg("count") = 0, py::arg("tol") = 0.0);
    mod.def("suite_names", &suite_names);
}
