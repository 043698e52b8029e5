#include "fjac/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace fjac {

namespace {

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

// int_0^x (x-s)^{-mu} s^gamma ds = B(1-mu, gamma+1) x^{gamma+1-mu}
double beta_convolution(double mu, double gamma, double x) {
  if (x == 0.0) return 0.0;
  return beta_fn(1.0 - mu, gamma + 1.0) * std::pow(x, gamma + 1.0 - mu);
}

}  // namespace

ScalarFn manufactured_source(double mu, ScalarFn u, double lambda_g,
                             int npoints) {
  auto rule = std::make_shared<QuadratureRule>(
      gauss_jacobi_rule(-mu, 1.0 / lambda_g - 1.0, npoints));
  return [mu, u = std::move(u), lambda_g, rule](double x) {
    if (x == 0.0) return u(0.0);
    double integral = 0.0;
    const double lead = std::pow(x, 1.0 - mu) / lambda_g;
    for (std::size_t q = 0; q < rule->nodes.size(); ++q) {
      const double theta = rule->nodes[q];
      const double lt = std::log(theta);
      const double ratio =
          std::log(-std::expm1(lt / lambda_g)) - std::log1p(-theta);
      integral += rule->weights[q] * std::exp(-mu * ratio) *
                  u(x * std::exp(lt / lambda_g));
    }
    return u(x) - lead * integral;
  };
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;

    v.push_back(CatalogEntry{
        "ex1",
        [](double mu) {
          return VieProblem(
              mu, [](double x, double s) { return std::exp(x - s); },
              [](double) { return 1.0; });
        },
        ReferencePolicy::kHighN, 0,
        "g = 1, K = exp(x-s); solution smooth after the x^{1/lambda} map for "
        "lambda with (j+k mu)/lambda integer"});

    v.push_back(CatalogEntry{
        "ex2",
        [](double mu) {
          return VieProblem(
              mu, [](double, double) { return 1.0; },
              [](double x) { return std::sqrt(x); });
        },
        ReferencePolicy::kHighN, 80,
        "g = x^0.5, K = 1; no closed-form solution, N=80 reference"});

    v.push_back(CatalogEntry{
        "ex3",
        [](double mu) {
          ScalarFn exact = [mu](double x) {
            return x == 0.0 ? 0.0 : std::pow(x, -mu) * std::sin(x);
          };
          ScalarFn g = [mu](double x) {
            if (x == 0.0) return 0.0;
            const double conv = std::sqrt(M_PI) *
                                std::exp(ln_gamma(1.0 - mu)) *
                                std::pow(x, 0.5 - mu) * std::sin(0.5 * x) *
                                bessel_series(0.5 - mu, 0.5 * x);
            return std::pow(x, -mu) * std::sin(x) - conv;
          };
          return VieProblem(mu, [](double, double) { return 1.0; },
                            std::move(g), std::move(exact));
        },
        ReferencePolicy::kExact, 0,
        "u = x^{-mu} sin x; convolution in closed form through the Bessel "
        "series"});

    v.push_back(CatalogEntry{
        "ex4i",
        [](double mu) {
          ScalarFn exact = [](double x) {
            return std::cbrt(x) + std::sqrt(x);
          };
          ScalarFn g = [mu](double x) {
            return std::cbrt(x) + std::sqrt(x) -
                   beta_convolution(mu, 1.0 / 3.0, x) -
                   beta_convolution(mu, 0.5, x);
          };
          return VieProblem(mu, [](double, double) { return 1.0; },
                            std::move(g), std::move(exact));
        },
        ReferencePolicy::kExact, 0, "u = x^{1/3} + x^{1/2}, K = 1"});

    v.push_back(CatalogEntry{
        "ex4ii",
        [](double mu) {
          ScalarFn exact = [](double x) {
            return std::pow(x, 1.1) + std::pow(x, 2.3);
          };
          ScalarFn g = [mu](double x) {
            return std::pow(x, 1.1) + std::pow(x, 2.3) -
                   beta_convolution(mu, 1.1, x) -
                   beta_convolution(mu, 2.3, x);
          };
          return VieProblem(mu, [](double, double) { return 1.0; },
                            std::move(g), std::move(exact));
        },
        ReferencePolicy::kExact, 0, "u = x^{1.1} + x^{2.3}, K = 1"});

    v.push_back(CatalogEntry{
        "ex4iii",
        [](double mu) {
          ScalarFn exact = [](double x) {
            return std::sin(std::pow(x, std::sqrt(2.0)) +
                            std::pow(x, std::sqrt(3.0)));
          };
          ScalarFn g = manufactured_source(mu, exact);
          return VieProblem(mu, [](double, double) { return 1.0; },
                            std::move(g), std::move(exact));
        },
        ReferencePolicy::kHighN, 0,
        "u = sin(x^sqrt2 + x^sqrt3), K = 1; source manufactured numerically"});

    return v;
  }();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw std::invalid_argument("unknown catalog id '" + id + "'");
}

namespace {

struct LineFit {
  double slope;
  double r2;
};

LineFit least_squares(const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = slope * xs[i] + intercept;
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  const double r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return {slope, r2};
}

}  // namespace

RateFit fit_rates(const std::vector<ConvergenceRecord>& records, int n_lo,
                  int n_hi, bool use_l2w) {
  std::vector<double> ns, log_err;
  for (const auto& rec : records) {
    if (rec.n < n_lo || rec.n > n_hi) continue;
    const double err = use_l2w ? rec.l2w : rec.linf;
    if (!(err > 1e-12)) continue;  // plateau points poison the fit
    ns.push_back(static_cast<double>(rec.n));
    log_err.push_back(std::log(err));
  }
  if (ns.size() < 3)
    throw std::runtime_error(
        "fit_rates: need at least 3 non-plateau records in the window");
  std::vector<double> log_n(ns.size());
  std::transform(ns.begin(), ns.end(), log_n.begin(),
                 [](double n) { return std::log(n); });
  const LineFit ll = least_squares(log_n, log_err);
  const LineFit sl = least_squares(ns, log_err);
  RateFit fit;
  fit.slope_loglog = ll.slope;
  fit.slope_semilog = sl.slope;
  fit.r2_loglog = ll.r2;
  fit.r2_semilog = sl.r2;
  fit.preferred =
      ll.r2 > sl.r2 ? FitPreference::kLogLog : FitPreference::kSemiLog;
  return fit;
}

ConvergenceReport sweep(const CatalogEntry& entry, double mu, double lambda,
                        double alpha, double beta,
                        const std::vector<int>& n_list,
                        const SweepOptions& options) {
  if (n_list.empty()) throw std::invalid_argument("sweep: empty n_list");
  const VieProblem problem = entry.make_problem(mu);

  ConvergenceReport report;
  report.problem_id = entry.id;
  report.mu = mu;
  report.lambda = lambda;
  report.alpha = alpha;
  report.beta = beta;

  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  ScalarFn reference;
  const bool use_exact = problem.exact.has_value() &&
                         entry.reference_policy == ReferencePolicy::kExact &&
                         !options.force_high_n_reference &&
                         !options.n_ref_override;
  Solution ref_solution;  // keeps the high-N interpolant alive
  if (use_exact) {
    reference = *problem.exact;
  } else {
    int n_ref = options.n_ref_override.value_or(
        entry.n_ref > 0 ? entry.n_ref : std::max(2 * n_max, 80));
    if (n_ref < 2 * n_max) n_ref = 2 * n_max;
    ref_solution = solve(problem, alpha, beta, lambda, n_ref);
    reference = [&ref_solution](double x) { return ref_solution.evaluate(x); };
  }

  for (int n : n_list) {
    try {
      Solution sol = solve(problem, alpha, beta, lambda, n);
      WeightedNormSpec spec{alpha, beta, lambda, 2 * n + 32};
      ScalarFn approx = [&sol](double x) { return sol.evaluate(x); };
      auto [linf, l2w] = error_norms(approx, reference, spec,
                                     options.grid_size, sol.basis.x_nodes);
      report.records.push_back(ConvergenceRecord{
          n, linf, l2w, sol.assemble_ms, sol.solve_ms,
          sol.condition_estimate});
    } catch (const std::exception&) {
      report.aborted = true;
      break;
    }
  }

  std::sort(report.records.begin(), report.records.end(),
            [](const auto& a, const auto& b) { return a.n < b.n; });
  const auto [w_lo, w_hi] = options.fit_window.value_or(
      std::pair<int, int>{n_list.front(), n_max});
  try {
    report.fitted_linf = fit_rates(report.records, w_lo, w_hi, false);
  } catch (const std::exception&) {
  }
  try {
    report.fitted_l2w = fit_rates(report.records, w_lo, w_hi, true);
  } catch (const std::exception&) {
  }
  return report;
}

void write_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "N,linf,l2w,assemble_ms,solve_ms,cond\n";
  for (const auto& rec : report.records) {
    out << rec.n << ',' << format_double(rec.linf) << ','
        << format_double(rec.l2w) << ',' << format_double(rec.assemble_ms)
        << ',' << format_double(rec.solve_ms) << ','
        << format_double(rec.cond_estimate) << '\n';
  }
  out << "# problem=" << report.problem_id << '\n';
  out << "# mu=" << format_double(report.mu) << '\n';
  out << "# lambda=" << format_double(report.lambda) << '\n';
  out << "# alpha=" << format_double(report.alpha) << '\n';
  out << "# beta=" << format_double(report.beta) << '\n';
  if (report.fitted_linf) {
    out << "# linf_slope_loglog=" << format_double(report.fitted_linf->slope_loglog)
        << '\n';
    out << "# linf_slope_semilog="
        << format_double(report.fitted_linf->slope_semilog) << '\n';
  }
  if (report.fitted_l2w) {
    out << "# l2w_slope_loglog=" << format_double(report.fitted_l2w->slope_loglog)
        << '\n';
    out << "# l2w_slope_semilog="
        << format_double(report.fitted_l2w->slope_semilog) << '\n';
  }
  out << "# aborted=" << (report.aborted ? 1 : 0) << '\n';
  if (!out) throw std::runtime_error("write_csv: write failure on " + path);
}

std::vector<ConvergenceRecord> read_csv_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv_records: cannot open " + path);
  std::vector<ConvergenceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'N') continue;
    std::istringstream ss(line);
    std::string field;
    ConvergenceRecord rec{};
    double* cols[5] = {&rec.linf, &rec.l2w, &rec.assemble_ms, &rec.solve_ms,
                       &rec.cond_estimate};
    std::getline(ss, field, ',');
    rec.n = std::stoi(field);
    for (double* col : cols) {
      std::getline(ss, field, ',');
      *col = std::stod(field);
    }
    records.push_back(rec);
  }
  return records;
}

}  // namespace fjac
