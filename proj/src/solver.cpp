#include "fjac/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fjac {

VieProblem::VieProblem(double mu_, KernelFn kernel_, ScalarFn source_,
                       std::optional<ScalarFn> exact_)
    : mu(mu_),
      kernel(std::move(kernel_)),
      source(std::move(source_)),
      exact(std::move(exact_)) {
  if (!(mu > 0.0) || !(mu < 1.0))
    throw std::domain_error("VieProblem: mu must be in (0,1)");
  if (!kernel || !source)
    throw std::invalid_argument("VieProblem: kernel and source required");
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double x = unif(rng);
    const double s = x * unif(rng);
    // the diagonal s = x is where kernels typically hide extra singularities
    if (!std::isfinite(kernel(x, s)) || !std::isfinite(kernel(x, x)))
      throw std::domain_error("VieProblem: kernel not finite on the triangle");
  }
}

Discretization make_discretization(const VieProblem& problem, double alpha,
                                   double beta, double lambda, int n) {
  BasisConfig cfg{alpha, beta, lambda, n};
  cfg.validate();
  Discretization disc;
  disc.basis = build_fractional_basis(cfg);
  disc.quad = gauss_jacobi_rule(-problem.mu, 1.0 / lambda - 1.0, n + 1);
  return disc;
}

double kbar(const VieProblem& problem, double x_i, double theta,
            double lambda) {
  if (!(theta > 0.0) || !(theta < 1.0))
    throw std::domain_error("kbar: theta must be in (0,1)");
  const double log_theta = std::log(theta);
  const double s = x_i * std::exp(log_theta / lambda);
  // log[(1-theta^{1/lambda})/(1-theta)]
  const double log_ratio =
      std::log(-std::expm1(log_theta / lambda)) - std::log1p(-theta);
  return std::exp((1.0 - problem.mu) * std::log(x_i) -
                  problem.mu * log_ratio) /
         lambda * problem.kernel(x_i, s);
}

namespace {

struct LuFactors {
  int n;
  std::vector<double> lu;   // packed L\U, row-major
  std::vector<int> pivots;
};

LuFactors lu_factor(int n, std::vector<double> a) {
  LuFactors f{n, std::move(a), std::vector<int>(n)};
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(f.lu[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu[i * n + k]);
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best < 1e-300)
      throw std::runtime_error("lu_solve: singular matrix at pivot " +
                               std::to_string(k));
    f.pivots[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(f.lu[k * n + j], f.lu[p * n + j]);
    const double inv = 1.0 / f.lu[k * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double m = f.lu[i * n + k] * inv;
      f.lu[i * n + k] = m;
      for (int j = k + 1; j < n; ++j) f.lu[i * n + j] -= m * f.lu[k * n + j];
    }
  }
  return f;
}

std::vector<double> lu_apply(const LuFactors& f, std::vector<double> b) {
  const int n = f.n;
  // the stored L entries are in final row order (factor swaps move whole
  // rows), so all interchanges must be applied before the forward pass
  for (int k = 0; k < n; ++k)
    if (f.pivots[k] != k) std::swap(b[k], b[f.pivots[k]]);
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) b[i] -= f.lu[i * n + k] * b[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= f.lu[i * n + j] * b[j];
    b[i] /= f.lu[i * n + i];
  }
  return b;
}

std::vector<double> mat_vec(int n, const std::vector<double>& a,
                            const std::vector<double>& x, bool transpose) {
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      y[transpose ? j : i] += a[i * n + j] * x[transpose ? i : j];
  return y;
}

double one_norm(int n, const std::vector<double>& a) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

// Hager-style 1-norm estimate of ||A^{-1}||_1 from the factorization.
double inv_one_norm_estimate(int n, const LuFactors& f,
                             const std::vector<double>& a) {
  std::vector<double> x(n, 1.0 / n);
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    std::vector<double> y = lu_apply(f, x);
    double norm = 0.0;
    for (double v : y) norm += std::abs(v);
    est = std::max(est, norm);
    std::vector<double> xi(n);
    for (int i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    // solve A^T z = xi
    std::vector<double> z = xi;
    {
      // forward/back substitution on the transpose
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) z[i] -= f.lu[j * n + i] * z[j];
        z[i] /= f.lu[i * n + i];
      }
      for (int i = n - 1; i >= 0; --i)
        for (int j = i + 1; j < n; ++j) z[i] -= f.lu[j * n + i] * z[j];
      for (int k = n - 1; k >= 0; --k)
        if (f.pivots[k] != k) std::swap(z[k], z[f.pivots[k]]);
    }
    int jmax = 0;
    for (int j = 1; j < n; ++j)
      if (std::abs(z[j]) > std::abs(z[jmax])) jmax = j;
    double xsum = 0.0;
    for (int j = 0; j < n; ++j) xsum += x[j] * (z[j] >= 0.0 ? 1.0 : -1.0);
    if (std::abs(z[jmax]) <= xsum) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  (void)a;
  return est;
}

}  // namespace

CollocationSystem assemble(const VieProblem& problem,
                           const Discretization& disc) {
  const int n = disc.basis.config.n;
  const int m = n + 1;
  CollocationSystem sys;
  sys.n = n;
  sys.matrix.assign(static_cast<std::size_t>(m) * m, 0.0);
  sys.rhs.resize(m);
  const double lambda = disc.basis.config.lambda;
  std::vector<double> h(m);
  for (int i = 0; i < m; ++i) {
    const double xi = disc.basis.x_nodes[i];
    const double zi = disc.basis.z_nodes[i];
    for (std::size_t q = 0; q < disc.quad.nodes.size(); ++q) {
      const double theta = disc.quad.nodes[q];
      const double kb = kbar(problem, xi, theta, lambda);
      // tau_i(theta)^lambda = z_i theta, so the cardinal functions are
      // evaluated directly in the z variable.
      cardinal_values_z(disc.basis, zi * theta, h);
      const double w = disc.quad.weights[q];
      for (int j = 0; j < m; ++j) sys.matrix[i * m + j] -= kb * w * h[j];
      if (!std::isfinite(kb))
        throw std::runtime_error("assemble: non-finite entry at row " +
                                 std::to_string(i) + ", quad point " +
                                 std::to_string(q));
    }
    sys.matrix[i * m + i] += 1.0;
    sys.rhs[i] = problem.source(xi);
    if (!std::isfinite(sys.rhs[i]))
      throw std::runtime_error("assemble: non-finite source at row " +
                               std::to_string(i));
  }
  for (double v : sys.matrix)
    if (!std::isfinite(v))
      throw std::runtime_error("assemble: non-finite matrix entry");
  LuFactors f = lu_factor(m, sys.matrix);
  sys.condition_estimate =
      one_norm(m, sys.matrix) * inv_one_norm_estimate(m, f, sys.matrix);
  return sys;
}

std::vector<double> lu_solve(const CollocationSystem& system) {
  return lu_solve_dense(system.matrix, system.rhs);
}

std::vector<double> lu_solve_dense(std::vector<double> a,
                                   std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  if (a.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("lu_solve_dense: shape mismatch");
  LuFactors f = lu_factor(n, a);
  std::vector<double> x = lu_apply(f, b);
  // one step of iterative refinement with the stored factorization
  std::vector<double> r = mat_vec(n, a, x, false);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  std::vector<double> dx = lu_apply(f, std::move(r));
  for (int i = 0; i < n; ++i) x[i] += dx[i];
  return x;
}

double Solution::evaluate(double x) const {
  return lagrange_eval(basis, nodal_values, x);
}

Solution solve(const VieProblem& problem, double alpha, double beta,
               double lambda, int n) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  Discretization disc = make_discretization(problem, alpha, beta, lambda, n);
  CollocationSystem sys = assemble(problem, disc);
  const auto t1 = Clock::now();
  Solution sol;
  sol.nodal_values = lu_solve(sys);
  const auto t2 = Clock::now();
  sol.basis = std::move(disc.basis);
  sol.assemble_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  sol.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  sol.condition_estimate = sys.condition_estimate;
  return sol;
}

double residual(const Solution& solution, const VieProblem& problem,
                int n_check, int quad_order) {
  const int n = solution.basis.config.n;
  if (quad_order < 4 * (n + 1))
    throw std::domain_error("residual: quad_order must be >= 4(N+1)");
  const double lambda = solution.basis.config.lambda;
  const QuadratureRule rule =
      gauss_jacobi_rule(-problem.mu, 1.0 / lambda - 1.0, quad_order);
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  double worst = 0.0;
  for (int c = 0; c < n_check; ++c) {
    const double xs = unif(rng);
    const double zs = pow_lambda(xs, lambda);
    double integral = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double theta = rule.nodes[q];
      // u_N at tau(theta) = xs theta^{1/lambda}: z-coordinate is zs*theta
      double un = 0.0;
      {
        std::vector<double> h(solution.nodal_values.size());
        cardinal_values_z(solution.basis, zs * theta, h);
        for (std::size_t j = 0; j < h.size(); ++j)
          un += h[j] * solution.nodal_values[j];
      }
      integral += rule.weights[q] * kbar(problem, xs, theta, lambda) * un;
    }
    const double r =
        std::abs(solution.evaluate(xs) - problem.source(xs) - integral);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace fjac
