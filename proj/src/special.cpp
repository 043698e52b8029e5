#include "fjac/special.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fjac {

namespace {

// Lanczos g = 7, n = 9 (Godfrey/Pugh coefficient set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double ln_gamma_core(double x) {
  // valid for x >= 0.5
  double a = kLanczos[0];
  double t = x + kLanczosG - 0.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1.0);
  return 0.5 * std::log(2.0 * M_PI) + (x - 0.5) * std::log(t) - t +
         std::log(a);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be > 0");
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(M_PI / std::sin(M_PI * x)) - ln_gamma_core(1.0 - x);
  }
  return ln_gamma_core(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::domain_error("beta_fn: arguments must be > 0");
  return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

std::pair<double, double> jacobi_recurrence(double alpha, double beta,
                                            std::size_t k) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("jacobi_recurrence: alpha, beta must be > -1");
  const double ab = alpha + beta;
  double a, b;
  if (k == 0) {
    a = (beta - alpha) / (ab + 2.0);
    b = std::exp((ab + 1.0) * std::log(2.0)) * beta_fn(alpha + 1.0, beta + 1.0);
  } else if (k == 1) {
    const double s = 2.0 + ab;
    a = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    b = 4.0 * (alpha + 1.0) * (beta + 1.0) / (s * s * (s + 1.0));
  } else {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    a = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    b = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) /
        (s * s * (s + 1.0) * (s - 1.0));
  }
  return {a, b};
}

namespace {

double jacobi_value(double alpha, double beta, int n, double t) {
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p = 0.5 * (alpha + beta + 2.0) * t + 0.5 * (alpha - beta);
  for (int k = 2; k <= n; ++k) {
    const double kk = k;
    const double ab = alpha + beta;
    const double c0 = 2.0 * kk * (kk + ab) * (2.0 * kk + ab - 2.0);
    const double c1 = (2.0 * kk + ab - 1.0) * (alpha * alpha - beta * beta);
    const double c2 = (2.0 * kk + ab - 1.0) * (2.0 * kk + ab) *
                      (2.0 * kk + ab - 2.0);
    const double c3 = 2.0 * (kk + alpha - 1.0) * (kk + beta - 1.0) *
                      (2.0 * kk + ab);
    const double pk = ((c1 + c2 * t) * p - c3 * pm1) / c0;
    pm1 = p;
    p = pk;
  }
  return p;
}

}  // namespace

std::pair<double, double> jacobi_eval(double alpha, double beta, int n,
                                      double t) {
  if (n < 0) throw std::domain_error("jacobi_eval: degree must be >= 0");
  const double v = jacobi_value(alpha, beta, n, t);
  const double d =
      n == 0 ? 0.0
             : 0.5 * (n + alpha + beta + 1.0) *
                   jacobi_value(alpha + 1.0, beta + 1.0, n - 1, t);
  return {v, d};
}

namespace {

// Symmetric tridiagonal QL with implicit shifts, eigenvectors accumulated.
// d: diagonal, e: off-diagonal (e[0] unused). z: row-major npoints x npoints,
// initialized to identity; on exit columns are eigenvectors.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e,
                std::vector<double>& z, int n) {
  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 60;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kTol * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          throw std::runtime_error(
              "gauss_jacobi_rule: QL eigensolver failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[k * n + i + 1];
            z[k * n + i + 1] = s * z[k * n + i] + c * f;
            z[k * n + i] = c * z[k * n + i] - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

QuadratureRule gauss_jacobi_rule(double alpha, double beta, int npoints) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("gauss_jacobi_rule: alpha, beta must be > -1");
  if (npoints < 1)
    throw std::domain_error("gauss_jacobi_rule: npoints must be >= 1");
  const int n = npoints;
  std::vector<double> d(n), e(n, 0.0);
  double mu0 = 0.0;
  for (int k = 0; k < n; ++k) {
    auto [a, b] = jacobi_recurrence(alpha, beta, static_cast<std::size_t>(k));
    d[k] = a;
    if (k == 0)
      mu0 = b;
    else
      e[k] = std::sqrt(b);
  }
  std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) z[i * n + i] = 1.0;
  tridiag_ql(d, e, z, n);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return d[i] < d[j]; });

  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // mass on [0,1] is mu0 / 2^{alpha+beta+1}
  const double scale = std::exp(-(alpha + beta + 1.0) * std::log(2.0));
  for (int j = 0; j < n; ++j) {
    const int c = order[j];
    rule.nodes[j] = 0.5 * (1.0 + d[c]);
    const double q = z[0 * n + c];
    rule.weights[j] = mu0 * scale * q * q;
  }
  return rule;
}

double bessel_series(double mu, double x) {
  if (!(mu > -1.0)) throw std::domain_error("bessel_series: mu must be > -1");
  if (x == 0.0) return mu == 0.0 ? 1.0 : 0.0;
  const double lead =
      std::exp(mu * std::log(0.5 * x) - ln_gamma(mu + 1.0));
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 200; ++k) {
    term *= -(x * x) / (4.0 * k * (mu + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

}  // namespace fjac
