#ifndef FJAC_SPECIAL_HPP_
#define FJAC_SPECIAL_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace fjac {

/// Gauss-Jacobi rule on [0,1] for the weight (1-z)^alpha z^beta.
struct QuadratureRule {
  double alpha;
  double beta;
  std::vector<double> nodes;    // strictly increasing, all in (0,1)
  std::vector<double> weights;  // positive, sum = B(beta+1, alpha+1)
};

/// log Gamma(x), x > 0. Lanczos approximation (g = 7, 9 coefficients),
/// reflection below 0.5. Relative error ~1e-14 on [0.5, 200].
double ln_gamma(double x);

/// Euler Beta B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0.
double beta_fn(double a, double b);

/// Coefficients of the monic three-term recurrence on [-1,1] for the
/// weight (1-t)^alpha (1+t)^beta:
///   p_{k+1}(t) = (t - a_k) p_k(t) - b_k p_{k-1}(t).
/// b_0 carries the total mass 2^{alpha+beta+1} B(alpha+1, beta+1).
std::pair<double, double> jacobi_recurrence(double alpha, double beta,
                                            std::size_t k);

/// Value and t-derivative of the standard Jacobi polynomial J_n^{alpha,beta}
/// at t in [-1,1], normalized so J_n(1) = Gamma(n+alpha+1)/(n! Gamma(alpha+1)).
std::pair<double, double> jacobi_eval(double alpha, double beta, int n,
                                      double t);

/// npoints-point Gauss-Jacobi rule on [0,1] via Golub-Welsch
/// (symmetric tridiagonal QL with implicit shifts).
QuadratureRule gauss_jacobi_rule(double alpha, double beta, int npoints);

/// (x/2)^mu sum_k (-x^2)^k / (k! Gamma(mu+k+1) 4^k); equals the Bessel
/// function J_mu(x) of the first kind. Series truncated at 1e-17 relative.
double bessel_series(double mu, double x);

}  // namespace fjac

#endif  // FJAC_SPECIAL_HPP_
