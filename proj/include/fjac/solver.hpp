#ifndef FJAC_SOLVER_HPP_
#define FJAC_SOLVER_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "fjac/approx.hpp"
#include "fjac/basis.hpp"

namespace fjac {

using KernelFn = std::function<double(double, double)>;

/// u(x) = g(x) + int_0^x (x-s)^{-mu} K(x,s) u(s) ds on [0,1], 0 < mu < 1.
/// `exact`, when present, must supply its own value at x = 0.
struct VieProblem {
  double mu;
  KernelFn kernel;
  ScalarFn source;
  std::optional<ScalarFn> exact;

  VieProblem(double mu, KernelFn kernel, ScalarFn source,
             std::optional<ScalarFn> exact = std::nullopt);
};

/// Collocation basis plus the (-mu, 1/lambda-1) Gauss-Jacobi rule used to
/// discretize the transformed integral.
struct Discretization {
  FractionalBasis basis;
  QuadratureRule quad;  // N+1 points, weight (1-theta)^{-mu} theta^{1/lambda-1}
};

Discretization make_discretization(const VieProblem& problem, double alpha,
                                   double beta, double lambda, int n);

struct CollocationSystem {
  int n;                        // matrix is (n+1) x (n+1), row-major
  std::vector<double> matrix;   // A = I - M
  std::vector<double> rhs;      // g(x_i)
  double condition_estimate;    // 1-norm estimate of cond(A)
};

struct Solution {
  std::vector<double> nodal_values;
  FractionalBasis basis;
  double assemble_ms;
  double solve_ms;
  double condition_estimate;

  double evaluate(double x) const;
};

/// Transformed kernel Kbar(x_i, tau_i(theta)) =
/// (x_i^{1-mu}/lambda) ((1-theta^{1/lambda})/(1-theta))^{-mu} K(x_i, x_i theta^{1/lambda});
/// the ratio factor is evaluated through log1p/expm1 so it stays accurate
/// as theta -> 1 (limit 1/lambda).
double kbar(const VieProblem& problem, double x_i, double theta, double lambda);

CollocationSystem assemble(const VieProblem& problem,
                           const Discretization& disc);

/// Partial-pivot LU solve with one step of iterative refinement.
std::vector<double> lu_solve(const CollocationSystem& system);

/// Dense solve of a general square system (shared with the oracle tests).
std::vector<double> lu_solve_dense(std::vector<double> a,
                                   std::vector<double> b);

Solution solve(const VieProblem& problem, double alpha, double beta,
               double lambda, int n);

/// Max residual |u_N(x*) - g(x*) - (K u_N)(x*)| at n_check random interior
/// points, the integral recomputed with an independent quad_order rule.
double residual(const Solution& solution, const VieProblem& problem,
                int n_check, int quad_order);

}  // namespace fjac

#endif  // FJAC_SOLVER_HPP_
