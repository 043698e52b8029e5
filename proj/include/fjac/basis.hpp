#ifndef FJAC_BASIS_HPP_
#define FJAC_BASIS_HPP_

#include <span>
#include <vector>

#include "fjac/special.hpp"

namespace fjac {

/// Parameters of the fractional Jacobi family J_n^{alpha,beta,lambda}(x)
/// = J_n^{alpha,beta}(2 x^lambda - 1) on [0,1].
struct BasisConfig {
  double alpha;
  double beta;
  double lambda;
  int n;  // max degree; basis has n+1 functions

  void validate() const;
};

/// Fractional Gauss points x_i = z_i^{1/lambda} (z_i the Jacobi-Gauss nodes
/// of degree n+1 on [0,1]) plus barycentric weights in the z variable.
struct FractionalBasis {
  BasisConfig config;
  std::vector<double> z_nodes;
  std::vector<double> x_nodes;
  std::vector<double> bary_weights;  // normalized so max |w_j| = 1
};

/// x^lambda with an explicit x = 0 branch (exp(lambda ln x) otherwise).
double pow_lambda(double x, double lambda);

/// J_deg^{alpha,beta,lambda}(x) for x in [0,1].
double frac_jacobi_eval(const BasisConfig& cfg, int deg, double x);

/// k-th lambda-derivative D_lambda^k J_deg^{alpha,beta,lambda}(x)
/// = d_hat(deg,k) J_{deg-k}^{alpha+k,beta+k,lambda}(x); zero when k > deg.
double frac_jacobi_lambda_deriv(const BasisConfig& cfg, int deg, int k,
                                double x);

/// Norm and eigenvalue constants attached to degree n of the family.
struct BasisConstants {
  double alpha;
  double beta;
  int n;

  double gamma_hat() const;       // squared weighted L2 norm of J_n
  double sigma() const;           // Sturm-Liouville eigenvalue n(n+a+b+1)
  double d_hat(int k) const;      // derivative proportionality factor
  double h_hat(int k) const;      // squared norm of D^k J_n
};

BasisConstants basis_constants(const BasisConfig& cfg, int n);

FractionalBasis build_fractional_basis(const BasisConfig& cfg);

/// Barycentric evaluation at z = x^lambda of the interpolant through
/// (x_nodes, nodal_values); exact nodal value when z hits a node.
double lagrange_eval(const FractionalBasis& basis,
                     std::span<const double> nodal_values, double x);

/// All n+1 cardinal functions h_j at the z-coordinate zq (helper used by
/// the collocation assembly, which only ever needs z-space evaluation).
void cardinal_values_z(const FractionalBasis& basis, double zq,
                       std::span<double> out);

/// max over an equispaced z grid of sum_j |h_j(z)|; independent of lambda.
double lebesgue_constant(const FractionalBasis& basis, int grid_size);

}  // namespace fjac

#endif  // FJAC_BASIS_HPP_
