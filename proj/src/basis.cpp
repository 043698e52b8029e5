#include "fjac/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace fjac {

void BasisConfig::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("BasisConfig: alpha, beta must be > -1");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::domain_error("BasisConfig: lambda must be in (0,1]");
  if (n < 0) throw std::domain_error("BasisConfig: n must be >= 0");
}

double pow_lambda(double x, double lambda) {
  if (x == 0.0) return 0.0;
  if (lambda == 1.0) return x;
  return std::exp(lambda * std::log(x));
}

double frac_jacobi_eval(const BasisConfig& cfg, int deg, double x) {
  const double z = pow_lambda(x, cfg.lambda);
  return jacobi_eval(cfg.alpha, cfg.beta, deg, 2.0 * z - 1.0).first;
}

double frac_jacobi_lambda_deriv(const BasisConfig& cfg, int deg, int k,
                                double x) {
  if (k < 0) throw std::domain_error("frac_jacobi_lambda_deriv: k >= 0");
  if (k > deg) return 0.0;
  if (k == 0) return frac_jacobi_eval(cfg, deg, x);
  const double ab1 = deg + cfg.alpha + cfg.beta + 1.0;
  const double d_hat = std::exp(ln_gamma(deg + k + cfg.alpha + cfg.beta + 1.0) -
                                ln_gamma(ab1));
  BasisConfig shifted{cfg.alpha + k, cfg.beta + k, cfg.lambda, cfg.n};
  return d_hat * frac_jacobi_eval(shifted, deg - k, x);
}

double BasisConstants::gamma_hat() const {
  if (n == 0) return beta_fn(beta + 1.0, alpha + 1.0);
  return std::exp(ln_gamma(n + alpha + 1.0) + ln_gamma(n + beta + 1.0) -
                  ln_gamma(n + 1.0) - ln_gamma(n + alpha + beta + 1.0)) /
         (2.0 * n + alpha + beta + 1.0);
}

double BasisConstants::sigma() const { return n * (n + alpha + beta + 1.0); }

double BasisConstants::d_hat(int k) const {
  if (k < 0 || k > n) throw std::domain_error("d_hat: need 0 <= k <= n");
  if (k == 0) return 1.0;
  return std::exp(ln_gamma(n + k + alpha + beta + 1.0) -
                  ln_gamma(n + alpha + beta + 1.0));
}

double BasisConstants::h_hat(int k) const {
  if (k < 0 || k > n) throw std::domain_error("h_hat: need 0 <= k <= n");
  // h_hat(n,k) = d_hat(n,k)^2 gamma_hat^{alpha+k,beta+k}_{n-k}; this form
  // stays finite in the n=0, alpha+beta=-1 corner.
  const double d = d_hat(k);
  BasisConstants shifted{alpha + k, beta + k, n - k};
  return d * d * shifted.gamma_hat();
}

BasisConstants basis_constants(const BasisConfig& cfg, int n) {
  cfg.validate();
  if (n < 0) throw std::domain_error("basis_constants: n must be >= 0");
  return BasisConstants{cfg.alpha, cfg.beta, n};
}

FractionalBasis build_fractional_basis(const BasisConfig& cfg) {
  cfg.validate();
  FractionalBasis basis;
  basis.config = cfg;
  QuadratureRule rule = gauss_jacobi_rule(cfg.alpha, cfg.beta, cfg.n + 1);
  basis.z_nodes = std::move(rule.nodes);

  const int m = cfg.n + 1;
  basis.x_nodes.resize(m);
  for (int i = 0; i < m; ++i)
    basis.x_nodes[i] = pow_lambda(basis.z_nodes[i], 1.0 / cfg.lambda);

  // Barycentric weights 1/prod(z_j - z_i) in log-magnitude/sign form;
  // the direct product under/overflows past N ~ 128.
  std::vector<double> logw(m, 0.0);
  std::vector<int> sign(m, 1);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      const double diff = basis.z_nodes[j] - basis.z_nodes[i];
      logw[j] -= std::log(std::abs(diff));
      if (diff < 0.0) sign[j] = -sign[j];
    }
  }
  double logmax = logw[0];
  for (int j = 1; j < m; ++j) logmax = std::max(logmax, logw[j]);
  basis.bary_weights.resize(m);
  for (int j = 0; j < m; ++j)
    basis.bary_weights[j] = sign[j] * std::exp(logw[j] - logmax);
  return basis;
}

namespace {

double bary_eval_z(const FractionalBasis& basis,
                   std::span<const double> values, double z) {
  const std::size_t m = basis.z_nodes.size();
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double diff = z - basis.z_nodes[j];
    if (std::abs(diff) < 1e-300) return values[j];
    const double t = basis.bary_weights[j] / diff;
    num += t * values[j];
    den += t;
  }
  return num / den;
}

}  // namespace

double lagrange_eval(const FractionalBasis& basis,
                     std::span<const double> nodal_values, double x) {
  if (nodal_values.size() != basis.z_nodes.size())
    throw std::invalid_argument("lagrange_eval: nodal value count mismatch");
  // the x -> x^lambda -> z round trip is not exact in floating point, so
  // snap to the stored nodes first to keep nodal values exact
  for (std::size_t j = 0; j < basis.x_nodes.size(); ++j)
    if (x == basis.x_nodes[j]) return nodal_values[j];
  return bary_eval_z(basis, nodal_values, pow_lambda(x, basis.config.lambda));
}

void cardinal_values_z(const FractionalBasis& basis, double zq,
                       std::span<double> out) {
  const std::size_t m = basis.z_nodes.size();
  if (out.size() != m)
    throw std::invalid_argument("cardinal_values_z: output size mismatch");
  double den = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double diff = zq - basis.z_nodes[j];
    if (std::abs(diff) < 1e-300) {
      for (std::size_t i = 0; i < m; ++i) out[i] = (i == j) ? 1.0 : 0.0;
      return;
    }
    out[j] = basis.bary_weights[j] / diff;
    den += out[j];
  }
  for (std::size_t j = 0; j < m; ++j) out[j] /= den;
}

double lebesgue_constant(const FractionalBasis& basis, int grid_size) {
  if (grid_size < 1000)
    throw std::domain_error("lebesgue_constant: grid_size must be >= 1000");
  const std::size_t m = basis.z_nodes.size();
  std::vector<double> h(m);
  double lam = 1.0;  // cardinal property gives exactly 1 at the nodes
  for (int g = 0; g <= grid_size; ++g) {
    const double z = static_cast<double>(g) / grid_size;
    cardinal_values_z(basis, z, h);
    double s = 0.0;
    for (double v : h) s += std::abs(v);
    lam = std::max(lam, s);
  }
  return lam;
}

}  // namespace fjac
