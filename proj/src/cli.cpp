#include "fjac/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "fjac/approx.hpp"
#include "fjac/experiments.hpp"
#include "fjac/expr.hpp"

namespace fjac::cli {

double parse_real_or_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t pa = 0, pb = 0;
      const long p = std::stol(text.substr(0, slash), &pa);
      const std::string den = text.substr(slash + 1);
      const long q = std::stol(den, &pb);
      if (pa != slash || pb != den.size() || q == 0)
        throw UsageError("malformed rational literal '" + text + "'");
      return static_cast<double>(p) / static_cast<double>(q);
    }
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size())
      throw UsageError("malformed number '" + text + "'");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("malformed number '" + text + "'");
  }
}

namespace {

const char kUsage[] =
    "usage:\n"
    "  fjac solve --problem <id|file> --mu <f> --lambda <f|p/q> --alpha <f>\n"
    "             --beta <f> --n <int> [--out <path>] [--ref exact|auto|<int>]\n"
    "  fjac sweep --problem <id|file> --mu <f> --lambda <f|p/q> --alpha <f>\n"
    "             --beta <f> --n-min <int> --n-max <int> --n-step <int>\n"
    "             [--fit-window lo:hi] [--out <path>] [--ref exact|auto|<int>]\n"
    "  fjac verify\n";

int parse_int(const std::string& text, const std::string& flag) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw UsageError("flag " + flag + ": malformed integer '" + text + "'");
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& argv) {
  if (argv.empty()) throw UsageError("missing subcommand");
  RunConfig cfg;
  if (argv[0] == "solve")
    cfg.subcommand = Subcommand::kSolve;
  else if (argv[0] == "sweep")
    cfg.subcommand = Subcommand::kSweep;
  else if (argv[0] == "verify")
    cfg.subcommand = Subcommand::kVerify;
  else
    throw UsageError("unknown subcommand '" + argv[0] + "'");
  if (cfg.subcommand == Subcommand::kVerify) {
    if (argv.size() > 1) throw UsageError("verify takes no flags");
    return cfg;
  }

  bool have_problem = false;
  for (std::size_t i = 1; i < argv.size(); i += 2) {
    const std::string& flag = argv[i];
    if (i + 1 >= argv.size())
      throw UsageError("flag " + flag + " requires a value");
    const std::string& value = argv[i + 1];
    if (flag == "--problem") {
      cfg.problem = value;
      have_problem = true;
    } else if (flag == "--mu") {
      cfg.mu = parse_real_or_rational(value);
    } else if (flag == "--lambda") {
      cfg.lambda = parse_real_or_rational(value);
    } else if (flag == "--alpha") {
      cfg.alpha = parse_real_or_rational(value);
    } else if (flag == "--beta") {
      cfg.beta = parse_real_or_rational(value);
    } else if (flag == "--n") {
      cfg.n = parse_int(value, flag);
    } else if (flag == "--n-min") {
      cfg.n_min = parse_int(value, flag);
    } else if (flag == "--n-max") {
      cfg.n_max = parse_int(value, flag);
    } else if (flag == "--n-step") {
      cfg.n_step = parse_int(value, flag);
    } else if (flag == "--fit-window") {
      const auto colon = value.find(':');
      if (colon == std::string::npos)
        throw UsageError("--fit-window expects lo:hi");
      cfg.fit_window = {parse_int(value.substr(0, colon), flag),
                        parse_int(value.substr(colon + 1), flag)};
    } else if (flag == "--out") {
      cfg.out_path = value;
    } else if (flag == "--ref") {
      if (value == "exact")
        cfg.reference = ReferenceOverride::kExact;
      else if (value == "auto")
        cfg.reference = ReferenceOverride::kAuto;
      else {
        cfg.reference = ReferenceOverride::kFixedN;
        cfg.reference_n = parse_int(value, flag);
      }
    } else {
      throw UsageError("unknown flag '" + flag + "'");
    }
  }
  if (!have_problem) throw UsageError("--problem is required");
  if (!(cfg.mu > 0.0) || !(cfg.mu < 1.0))
    throw UsageError("--mu must be in (0,1)");
  if (!(cfg.lambda > 0.0) || cfg.lambda > 1.0)
    throw UsageError("--lambda must be in (0,1]");
  if (!(cfg.alpha > -1.0) || !(cfg.beta > -1.0))
    throw UsageError("--alpha and --beta must be > -1");
  if (cfg.subcommand == Subcommand::kSolve && cfg.n < 0)
    throw UsageError("--n must be >= 0");
  if (cfg.subcommand == Subcommand::kSweep &&
      (cfg.n_step < 1 || cfg.n_max < cfg.n_min))
    throw UsageError("sweep needs n-min <= n-max and n-step >= 1");
  return cfg;
}

VieProblem load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    std::string key = line.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    if (kv.count(key))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": duplicate key '" + key + "'");
    kv[key] = line.substr(eq + 1);
  }
  for (const char* required : {"mu", "kernel", "source"})
    if (!kv.count(required))
      throw std::runtime_error(path + ": missing mandatory key '" +
                               std::string(required) + "'");

  const double mu = parse_real_or_rational(kv["mu"]);
  auto kernel_ast = std::make_shared<expr::ExprAst>(
      expr::parse(kv["kernel"], {"x", "s"}));
  auto source_ast =
      std::make_shared<expr::ExprAst>(expr::parse(kv["source"], {"x"}));
  KernelFn kernel = [kernel_ast](double x, double s) {
    return expr::eval(*kernel_ast, {{"x", x}, {"s", s}});
  };
  ScalarFn source = [source_ast](double x) {
    return expr::eval(*source_ast, {{"x", x}});
  };
  std::optional<ScalarFn> exact;
  if (kv.count("exact")) {
    auto exact_ast =
        std::make_shared<expr::ExprAst>(expr::parse(kv["exact"], {"x"}));
    std::optional<double> at_zero;
    if (kv.count("exact_at_zero"))
      at_zero = parse_real_or_rational(kv["exact_at_zero"]);
    exact = [exact_ast, at_zero](double x) {
      if (x == 0.0 && at_zero) return *at_zero;
      return expr::eval(*exact_ast, {{"x", x}});
    };
  }
  return VieProblem(mu, std::move(kernel), std::move(source),
                    std::move(exact));
}

namespace {

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

Check check_quadrature_exactness() {
  double worst = 0.0;
  for (double alpha : {-0.5, 0.0, 0.3}) {
    for (double beta : {-0.5, 0.0, 0.3}) {
      for (int n : {2, 5, 11, 20}) {
        const QuadratureRule rule = gauss_jacobi_rule(alpha, beta, n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
          double approx = 0.0;
          for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            approx += rule.weights[q] * std::pow(rule.nodes[q], k);
          const double expected = beta_fn(beta + k + 1.0, alpha + 1.0);
          worst = std::max(worst, std::abs(approx - expected) / expected);
        }
      }
    }
  }
  return {"quadrature-exactness", worst <= 1e-11,
          "max rel err " + std::to_string(worst)};
}

Check check_orthogonality() {
  double worst = 0.0;
  for (double ab : {-0.5, 0.0}) {
    for (double lambda : {1.0, 0.5}) {
      WeightedNormSpec spec{ab, ab, lambda, 40};
      BasisConfig cfg{ab, ab, lambda, 10};
      for (int m = 0; m <= 10; ++m) {
        for (int n = m; n <= 10; ++n) {
          ScalarFn jm = [&](double x) { return frac_jacobi_eval(cfg, m, x); };
          ScalarFn jn = [&](double x) { return frac_jacobi_eval(cfg, n, x); };
          const double ip = weighted_inner_product(jm, jn, spec);
          const double expected =
              m == n ? basis_constants(cfg, n).gamma_hat() : 0.0;
          worst = std::max(worst, std::abs(ip - expected));
        }
      }
    }
  }
  return {"orthogonality", worst <= 1e-10,
          "max abs err " + std::to_string(worst)};
}

Check check_derivative_recursion() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  double worst = 0.0;
  BasisConfig cfg{-0.5, 0.3, 0.5, 12};
  BasisConfig shifted{cfg.alpha + 1.0, cfg.beta + 1.0, cfg.lambda, cfg.n};
  for (int n = 1; n <= 12; ++n) {
    for (int c = 0; c < 100; ++c) {
      const double x = unif(rng);
      const double lhs = frac_jacobi_lambda_deriv(cfg, n, 1, x);
      const double rhs = (n + cfg.alpha + cfg.beta + 1.0) *
                         frac_jacobi_eval(shifted, n - 1, x);
      const double scale = std::max(1.0, std::abs(rhs));
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
  }
  return {"derivative-recursion", worst <= 1e-10,
          "max rel err " + std::to_string(worst)};
}

Check check_interpolation_exactness() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  BasisConfig cfg{-0.5, -0.5, 1.0 / 3.0, 12};
  const FractionalBasis basis = build_fractional_basis(cfg);
  std::vector<double> coeffs(cfg.n + 1);
  for (double& c : coeffs) c = unif(rng);
  ScalarFn poly = [&](double x) {
    // lambda-polynomial with random coefficients
    double sum = 0.0;
    const double z = pow_lambda(x, cfg.lambda);
    double p = 1.0;
    for (double c : coeffs) {
      sum += c * p;
      p *= z;
    }
    return sum;
  };
  std::vector<double> values = interpolate(poly, basis);
  double worst = 0.0;
  std::uniform_real_distribution<double> unif01(0.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    const double x = unif01(rng);
    const double got = lagrange_eval(basis, values, x);
    const double want = poly(x);
    worst = std::max(worst,
                     std::abs(got - want) / std::max(1.0, std::abs(want)));
  }
  return {"interpolation-exactness", worst <= 1e-11,
          "max rel err " + std::to_string(worst)};
}

Check check_manufactured_constant() {
  const double mu = 0.5;
  VieProblem problem(
      mu, [](double, double) { return 1.0; },
      [mu](double x) {
        return 1.0 - (x == 0.0 ? 0.0 : std::pow(x, 1.0 - mu) / (1.0 - mu));
      },
      ScalarFn([](double) { return 1.0; }));
  Solution sol = solve(problem, -0.5, -0.5, 0.5, 16);
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = static_cast<double>(i) / 2000;
    worst = std::max(worst, std::abs(sol.evaluate(x) - 1.0));
  }
  return {"manufactured-constant-solve", worst <= 1e-10,
          "Linf err " + std::to_string(worst)};
}

}  // namespace

bool run_verify(std::ostream& out) {
  bool all_ok = true;
  for (const Check& check :
       {check_quadrature_exactness(), check_orthogonality(),
        check_derivative_recursion(), check_interpolation_exactness(),
        check_manufactured_constant()}) {
    out << (check.ok ? "PASS " : "FAIL ") << check.name << " (" << check.detail
        << ")\n";
    all_ok = all_ok && check.ok;
  }
  return all_ok;
}

namespace {

CatalogEntry resolve_problem(const RunConfig& cfg) {
  for (const auto& entry : catalog())
    if (entry.id == cfg.problem) return entry;
  if (!std::filesystem::exists(cfg.problem))
    throw UsageError("problem '" + cfg.problem +
                     "' is neither a catalog id nor a file");
  const std::string path = cfg.problem;
  VieProblem probe = load_problem_file(path);  // fail fast on parse errors
  const bool has_exact = probe.exact.has_value();
  return CatalogEntry{
      "file:" + path,
      [path](double) { return load_problem_file(path); },
      has_exact ? ReferencePolicy::kExact : ReferencePolicy::kHighN, 0,
      "user problem file"};
}

void print_report(const ConvergenceReport& report, std::ostream& out) {
  out.precision(12);
  for (const auto& rec : report.records)
    out << "REC " << rec.n << ' ' << rec.linf << ' ' << rec.l2w << '\n';
  auto print_fit = [&](const char* norm, const RateFit& fit) {
    out << "FIT " << norm << " loglog " << fit.slope_loglog << " semilog "
        << fit.slope_semilog << " preferred "
        << (fit.preferred == FitPreference::kLogLog ? "loglog" : "semilog")
        << '\n';
  };
  if (report.fitted_linf) print_fit("linf", *report.fitted_linf);
  if (report.fitted_l2w) print_fit("l2w", *report.fitted_l2w);
}

int run_solve_or_sweep(const RunConfig& cfg, std::ostream& out) {
  CatalogEntry entry = resolve_problem(cfg);
  SweepOptions options;
  options.fit_window = cfg.fit_window;
  if (cfg.reference == ReferenceOverride::kFixedN) {
    options.n_ref_override = cfg.reference_n;
    options.force_high_n_reference = true;
  } else if (cfg.reference == ReferenceOverride::kExact) {
    entry.reference_policy = ReferencePolicy::kExact;
    const VieProblem probe = entry.make_problem(cfg.mu);
    if (!probe.exact.has_value())
      throw UsageError("--ref exact: problem has no exact solution");
  }
  std::vector<int> n_list;
  if (cfg.subcommand == Subcommand::kSolve) {
    n_list.push_back(cfg.n);
  } else {
    for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step)
      n_list.push_back(n);
  }
  const ConvergenceReport report =
      sweep(entry, cfg.mu, cfg.lambda, cfg.alpha, cfg.beta, n_list, options);
  print_report(report, out);
  if (cfg.out_path) write_csv(report, *cfg.out_path);
  if (report.aborted || report.records.size() != n_list.size()) return 2;
  return 0;
}

}  // namespace

int run_main(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(argv);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  }
  try {
    if (cfg.subcommand == Subcommand::kVerify)
      return run_verify(out) ? 0 : 3;
    return run_solve_or_sweep(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << kUsage;
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace fjac::cli
