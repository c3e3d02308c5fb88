#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "g2t/closed_form.hpp"
#include "g2t/criterion.hpp"
#include "g2t/generator.hpp"
#include "g2t/sing.hpp"
#include "g2t/walk.hpp"
#include "g2t/convergence.hpp"

#include <sstream>

namespace py = pybind11;
using namespace g2t;

namespace {

py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

py::list to_py(const std::vector<mpz_class>& v) {
    py::list out;
    for (const auto& z : v) out.append(to_py(z));
    return out;
}

// (midpoint string, radius upper bound)
py::tuple ball(const PrecReal& x, int digits) { return py::make_tuple(x.mid_string(digits), x.rad_double()); }

WalkOptions walk(std::size_t exact_limit, int threads) {
    WalkOptions opt;
    opt.exact_limit = exact_limit;
    opt.threads = threads;
    return opt;
}

py::dict report(const Generator& gen, int digits) {
    const CriterionReport rep = analyze(gen, digits);
    py::dict d;
    d["branch"] = to_string(rep.branch);
    d["tau"] = rep.tau ? py::object(ball(*rep.tau, digits)) : py::none();
    d["r"] = ball(rep.r, digits);
    d["C"] = rep.C ? py::object(ball(*rep.C, digits)) : py::none();
    d["R"] = rep.R ? py::object(ball(*rep.R, digits)) : py::str("infinite");
    d["y_at_r"] = rep.y_at_r ? py::object(ball(*rep.y_at_r, 20)) : py::none();
    d["gcd_period"] = rep.gcd_period;
    d["boundary_root"] = rep.boundary_root;
    d["alpha_fit"] = rep.alpha_fit ? py::object(py::float_(*rep.alpha_fit)) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<ExactLimitError>(m, "ExactLimitError", PyExc_ValueError);
    py::register_exception<SpecParseError>(m, "SpecParseError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ArithmeticError);
    py::register_exception<CertificationError>(m, "CertificationError", PyExc_ArithmeticError);
    py::register_exception<RefinementError>(m, "RefinementError", PyExc_ArithmeticError);

    m.def("bn_exact", [](std::size_t n, std::size_t exact_limit) { return to_py(bn_exact(n, walk(exact_limit, 1))); },
          py::arg("n"), py::arg("exact_limit") = 500);
    m.def("bn_sequence",
          [](std::size_t n, std::size_t exact_limit, int threads) {
              return to_py(bn_exact_sequence(n, walk(exact_limit, threads)));
          },
          py::arg("n"), py::arg("exact_limit") = 500, py::arg("threads") = 1);
    m.def("an_sequence",
          [](std::size_t n, std::size_t exact_limit) { return to_py(an_exact_sequence(n, walk(exact_limit, 1))); },
          py::arg("n"), py::arg("exact_limit") = 500);
    m.def("bn_scaled", &bn_scaled, py::arg("n"), py::arg("threads") = 1);
    m.def("saddle",
          [](std::size_t n, std::size_t grid) {
              const SaddleResult s = saddle_quadrature(n, grid);
              return py::make_tuple(s.value, s.grid);
          },
          py::arg("n"), py::arg("grid") = 64);

    m.def("kappa",
          [](std::size_t i_max) {
              py::list out;
              for (const auto& k : kappa(i_max)) out.append(py::make_tuple(to_py(k.get_num()), to_py(k.get_den())));
              return out;
          },
          py::arg("i_max") = 15);
    m.def("asym_bn", [](std::size_t n, std::size_t order) { return asym_bn(n, order).mid_double(); }, py::arg("n"),
          py::arg("order") = 7);
    m.def("asym_an", [](std::size_t n) { return asym_an(n).mid_double(); }, py::arg("n"));

    m.def("constants",
          [](int digits) {
              py::list out;
              for (const auto& r : constants(digits)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["value"] = ball(r.value, digits);
                  d["route"] = ball(r.route, digits);
                  d["closed_form"] = r.closed_form;
                  d["paper_approx"] = r.paper_approx;
                  d["certified"] = r.certified;
                  out.append(d);
              }
              return out;
          },
          py::arg("digits") = 60);
    m.def("expansion",
          [](int digits) {
              const PsiExpansion psi = bootstrap_psi(digits);
              const AExpansion a = sing_A(psi);
              py::dict d;
              py::list gamma, eta;
              for (const auto& g : psi.gamma) gamma.append(g.mid_double());
              for (const auto& e : a.eta) eta.append(e.mid_double());
              d["gamma"] = gamma;
              d["eta"] = eta;
              d["C"] = ball(psi.C, digits);
              d["log_coeff"] = ball(a.log_coeff, digits);
              d["M"] = ball(a.M, digits);
              return d;
          },
          py::arg("digits") = 60);

    m.def("analyze_spec",
          [](const std::string& text, int digits, std::size_t exact_limit) {
              std::istringstream in(text);
              return report(*parse_generator_spec(in, exact_limit), digits);
          },
          py::arg("text"), py::arg("digits") = 60, py::arg("exact_limit") = 500);
}
