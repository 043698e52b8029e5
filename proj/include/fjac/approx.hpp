#ifndef FJAC_APPROX_HPP_
#define FJAC_APPROX_HPP_

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fjac/basis.hpp"

namespace fjac {

using ScalarFn = std::function<double(double)>;

/// Parameters of the weighted inner product (.,.)_{omega^{alpha,beta,lambda}}
/// and of the quadrature used to evaluate it.
struct WeightedNormSpec {
  double alpha;
  double beta;
  double lambda;
  int quad_order;
};

/// int_0^1 f g omega^{alpha,beta,lambda} dx, evaluated in the z variable:
/// int_0^1 f(z^{1/lambda}) g(z^{1/lambda}) (1-z)^alpha z^beta dz.
double weighted_inner_product(const ScalarFn& f, const ScalarFn& g,
                              const WeightedNormSpec& spec);

/// Coefficients of the orthogonal projection of f onto span{J_0,...,J_n}.
std::vector<double> project(const ScalarFn& f, int n,
                            const WeightedNormSpec& spec);

/// Expansion sum_k coeffs[k] J_k^{alpha,beta,lambda}(x).
double eval_expansion(std::span<const double> coeffs,
                      const WeightedNormSpec& spec, double x);

/// Nodal values f(x_i) at the fractional Gauss points.
std::vector<double> interpolate(const ScalarFn& f,
                                const FractionalBasis& basis);

/// L-infinity error over {i/grid_size : i = 1..grid_size} union extra_points,
/// plus the weighted L2 norm of the difference.
std::pair<double, double> error_norms(const ScalarFn& u_approx,
                                      const ScalarFn& u_ref,
                                      const WeightedNormSpec& spec,
                                      int grid_size,
                                      std::span<const double> extra_points = {});

}  // namespace fjac

#endif  // FJAC_APPROX_HPP_
