#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fjac/approx.hpp"
#include "fjac/basis.hpp"
#include "fjac/experiments.hpp"
#include "fjac/expr.hpp"
#include "fjac/solver.hpp"
#include "fjac/special.hpp"

namespace py = pybind11;
using namespace fjac;

namespace {

VieProblem make_problem(double mu, const std::string& kernel,
                        const std::string& source, const std::string& exact,
                        std::optional<double> exact_at_zero) {
  auto k_ast = std::make_shared<expr::ExprAst>(expr::parse(kernel, {"x", "s"}));
  auto g_ast = std::make_shared<expr::ExprAst>(expr::parse(source, {"x"}));
  std::optional<ScalarFn> exact_fn;
  if (!exact.empty()) {
    auto u_ast = std::make_shared<expr::ExprAst>(expr::parse(exact, {"x"}));
    exact_fn = [u_ast, exact_at_zero](double x) {
      if (x == 0.0 && exact_at_zero) return *exact_at_zero;
      return expr::eval(*u_ast, {{"x", x}});
    };
  }
  return VieProblem(
      mu,
      [k_ast](double x, double s) {
        return expr::eval(*k_ast, {{"x", x}, {"s", s}});
      },
      [g_ast](double x) { return expr::eval(*g_ast, {{"x", x}}); },
      std::move(exact_fn));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Fractional Jacobi spectral collocation for weakly singular Volterra "
      "integral equations";

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("alpha", &QuadratureRule::alpha)
      .def_readonly("beta", &QuadratureRule::beta)
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights);

  m.def("ln_gamma", &ln_gamma, py::arg("x"));
  m.def("beta_fn", &beta_fn, py::arg("a"), py::arg("b"));
  m.def("bessel_series", &bessel_series, py::arg("mu"), py::arg("x"));
  m.def("gauss_jacobi_rule", &gauss_jacobi_rule, py::arg("alpha"),
        py::arg("beta"), py::arg("npoints"));
  m.def(
      "frac_jacobi_eval",
      [](double alpha, double beta, double lam, int deg, double x) {
        BasisConfig cfg{alpha, beta, lam, deg};
        return frac_jacobi_eval(cfg, deg, x);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("lam"), py::arg("deg"),
      py::arg("x"));
  m.def(
      "lebesgue_constant",
      [](double alpha, double beta, int n, int grid_size) {
        BasisConfig cfg{alpha, beta, 1.0, n};
        return lebesgue_constant(build_fractional_basis(cfg), grid_size);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("n"),
      py::arg("grid_size") = 2000);

  py::class_<Solution>(m, "Solution")
      .def_readonly("nodal_values", &Solution::nodal_values)
      .def_readonly("condition_estimate", &Solution::condition_estimate)
      .def("evaluate", &Solution::evaluate, py::arg("x"))
      .def_property_readonly("x_nodes", [](const Solution& s) {
        return s.basis.x_nodes;
      });

  m.def(
      "solve_expr",
      [](double mu, const std::string& kernel, const std::string& source,
         double alpha, double beta, double lam, int n) {
        return solve(make_problem(mu, kernel, source, "", std::nullopt), alpha,
                     beta, lam, n);
      },
      py::arg("mu"), py::arg("kernel"), py::arg("source"), py::arg("alpha"),
      py::arg("beta"), py::arg("lam"), py::arg("n"),
      "Solve u = g + int_0^x (x-s)^{-mu} K(x,s) u(s) ds with expression "
      "strings for K and g.");

  m.def(
      "solve_catalog",
      [](const std::string& id, double mu, double alpha, double beta,
         double lam, int n) {
        return solve(catalog_entry(id).make_problem(mu), alpha, beta, lam, n);
      },
      py::arg("id"), py::arg("mu"), py::arg("alpha"), py::arg("beta"),
      py::arg("lam"), py::arg("n"));

  py::class_<ConvergenceRecord>(m, "ConvergenceRecord")
      .def_readonly("n", &ConvergenceRecord::n)
      .def_readonly("linf", &ConvergenceRecord::linf)
      .def_readonly("l2w", &ConvergenceRecord::l2w)
      .def_readonly("cond_estimate", &ConvergenceRecord::cond_estimate);

  py::class_<RateFit>(m, "RateFit")
      .def_readonly("slope_loglog", &RateFit::slope_loglog)
      .def_readonly("slope_semilog", &RateFit::slope_semilog)
      .def_property_readonly("preferred", [](const RateFit& f) {
        return f.preferred == FitPreference::kLogLog ? "loglog" : "semilog";
      });

  py::class_<ConvergenceReport>(m, "ConvergenceReport")
      .def_readonly("problem_id", &ConvergenceReport::problem_id)
      .def_readonly("records", &ConvergenceReport::records)
      .def_readonly("fitted_linf", &ConvergenceReport::fitted_linf)
      .def_readonly("fitted_l2w", &ConvergenceReport::fitted_l2w)
      .def_readonly("aborted", &ConvergenceReport::aborted);

  m.def("catalog_ids", [] {
    std::vector<std::string> ids;
    for (const auto& e : catalog()) ids.push_back(e.id);
    return ids;
  });

  m.def(
      "sweep_catalog",
      [](const std::string& id, double mu, double lam, double alpha,
         double beta, const std::vector<int>& n_list) {
        return sweep(catalog_entry(id), mu, lam, alpha, beta, n_list);
      },
      py::arg("id"), py::arg("mu"), py::arg("lam"), py::arg("alpha"),
      py::arg("beta"), py::arg("n_list"));

  m.def("write_csv", &write_csv, py::arg("report"), py::arg("path"));

  m.def(
      "expr_eval",
      [](const std::string& src, const std::map<std::string, double>& vars) {
        std::set<std::string> names;
        for (const auto& [k, v] : vars) names.insert(k);
        return expr::eval(expr::parse(src, names), vars);
      },
      py::arg("src"), py::arg("vars"));
}
