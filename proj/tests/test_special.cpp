#include "fjac/special.hpp"

#include <cmath>
#include <stdexcept>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"

using namespace fjac;

TEST_CASE("ln_gamma known values") {
  CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(ln_gamma(0.5) ==
        doctest::Approx(std::log(std::sqrt(M_PI))).epsilon(1e-13));
  CHECK(ln_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-13));
  CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("ln_gamma recurrence on [0.5, 100]") {
  for (double x = 0.5; x <= 100.0; x += 0.37) {
    const double lhs = ln_gamma(x + 1.0) - ln_gamma(x) - std::log(x);
    CHECK(std::abs(lhs) <= 1e-12);
  }
}

TEST_CASE("beta_fn values and symmetry") {
  CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta_fn(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK(beta_fn(2.3, 0.7) == doctest::Approx(beta_fn(0.7, 2.3)).epsilon(1e-14));
  CHECK_THROWS_AS(beta_fn(-1.0, 2.0), std::domain_error);

  // B(1-mu, gamma+1), mu = 0.1, gamma = 1/3, against the quadrature oracle
  const double oracle = oracles::integrate_weighted01(
      -0.1, 1.0 / 3.0, [](double) { return 1.0; });
  CHECK(beta_fn(1.0 - 0.1, 1.0 / 3.0 + 1.0) ==
        doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("jacobi_recurrence Legendre and Chebyshev coefficients") {
  CHECK(jacobi_recurrence(0.0, 0.0, 0).first == doctest::Approx(0.0));
  CHECK(jacobi_recurrence(-0.5, -0.5, 1).second ==
        doctest::Approx(0.5).epsilon(1e-14));
  for (std::size_t k = 2; k <= 8; ++k)
    CHECK(jacobi_recurrence(-0.5, -0.5, k).second ==
          doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("jacobi_recurrence generates weight-orthogonal monic polynomials") {
  const double alpha = 0.3, beta = -0.4;
  // build monic p_0..p_4 coefficient arrays from the recurrence
  std::vector<std::vector<double>> p = {{1.0}};
  {
    auto [a0, b0] = jacobi_recurrence(alpha, beta, 0);
    (void)b0;
    p.push_back({-a0, 1.0});
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    auto [a, b] = jacobi_recurrence(alpha, beta, k);
    std::vector<double> next(p[k].size() + 1, 0.0);
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      next[i + 1] += p[k][i];
      next[i] -= a * p[k][i];
    }
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) next[i] -= b * p[k - 1][i];
    p.push_back(next);
  }
  auto horner = [](const std::vector<double>& c, double t) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
    return v;
  };
  for (int m = 0; m <= 3; ++m) {
    const double ip = oracles::integrate_jacobi_weighted(
        alpha, beta,
        [&](double t) { return horner(p[4], t) * horner(p[m], t); });
    CHECK(std::abs(ip) <= 1e-9);
  }
}

TEST_CASE("jacobi_eval base cases and Chebyshev proportionality") {
  CHECK(jacobi_eval(0.7, -0.2, 0, 0.3).first == doctest::Approx(1.0));
  CHECK(jacobi_eval(0.0, 0.0, 1, 0.4).first ==
        doctest::Approx(0.4).epsilon(1e-14));

  // J_n^{-1/2,-1/2}(cos t) = ratio * cos(n t), ratio = Gamma(n+1/2)/(n! Gamma(1/2))
  const int n = 5;
  const double t = 0.7;
  const double ratio =
      std::exp(ln_gamma(n + 0.5) - ln_gamma(n + 1.0) - ln_gamma(0.5));
  CHECK(jacobi_eval(-0.5, -0.5, n, std::cos(t)).first ==
        doctest::Approx(ratio * std::cos(n * t)).epsilon(1e-12));
}

TEST_CASE("jacobi_eval endpoint normalization") {
  for (int n : {1, 3, 7}) {
    const double expected =
        std::exp(ln_gamma(n + 0.3 + 1.0) - ln_gamma(n + 1.0) - ln_gamma(1.3));
    CHECK(jacobi_eval(0.3, -0.4, n, 1.0).first ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("jacobi_eval derivative matches finite differences") {
  const double h = 1e-6;
  for (double t : {-0.8, -0.1, 0.33, 0.9}) {
    auto [v, d] = jacobi_eval(0.3, -0.4, 6, t);
    (void)v;
    const double fd = (jacobi_eval(0.3, -0.4, 6, t + h).first -
                       jacobi_eval(0.3, -0.4, 6, t - h).first) /
                      (2.0 * h);
    CHECK(d == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("gauss_jacobi_rule closed forms") {
  SUBCASE("2-point Gauss-Legendre") {
    const QuadratureRule rule = gauss_jacobi_rule(0.0, 0.0, 2);
    CHECK(rule.nodes[0] ==
          doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(rule.nodes[1] ==
          doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("4-point Chebyshev-Gauss") {
    const QuadratureRule rule = gauss_jacobi_rule(-0.5, -0.5, 4);
    std::vector<double> expected;
    for (int k = 4; k >= 1; --k)
      expected.push_back(0.5 * (1.0 + std::cos((2.0 * k - 1.0) * M_PI / 8.0)));
    for (int j = 0; j < 4; ++j)
      CHECK(rule.nodes[j] == doctest::Approx(expected[j]).epsilon(1e-13));
    for (int j = 0; j < 4; ++j)
      CHECK(rule.weights[j] == doctest::Approx(M_PI / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("quadrature rule invariants") {
  for (double alpha : {-0.5, 0.0, 0.3, 1.0}) {
    for (double beta : {-0.5, 0.0, 0.3, 1.0}) {
      for (int n = 2; n <= 20; ++n) {
        const QuadratureRule rule = gauss_jacobi_rule(alpha, beta, n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
          CHECK(rule.nodes[j] > 0.0);
          CHECK(rule.nodes[j] < 1.0);
          CHECK(rule.weights[j] > 0.0);
          if (j) CHECK(rule.nodes[j] > rule.nodes[j - 1]);
        }
        const double mass =
            std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
        CHECK(mass == doctest::Approx(beta_fn(beta + 1.0, alpha + 1.0))
                          .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("quadrature exactness on monomials") {
  for (double alpha : {-0.5, 0.0, 0.3, 1.0}) {
    for (double beta : {-0.5, 0.0, 0.3, 1.0}) {
      for (int n = 2; n <= 20; ++n) {
        const QuadratureRule rule = gauss_jacobi_rule(alpha, beta, n);
        for (int k = 0; k <= 2 * n - 1; ++k) {
          double approx = 0.0;
          for (int j = 0; j < n; ++j)
            approx += rule.weights[j] * std::pow(rule.nodes[j], k);
          const double expected = beta_fn(beta + k + 1.0, alpha + 1.0);
          CHECK(std::abs(approx - expected) <= 1e-11 * expected);
        }
      }
    }
  }
}

TEST_CASE("node interlacing") {
  for (double alpha : {-0.5, 0.3}) {
    for (int n = 2; n <= 16; ++n) {
      const QuadratureRule lo = gauss_jacobi_rule(alpha, 0.0, n);
      const QuadratureRule hi = gauss_jacobi_rule(alpha, 0.0, n + 1);
      for (int j = 0; j < n; ++j) {
        CHECK(hi.nodes[j] < lo.nodes[j]);
        CHECK(lo.nodes[j] < hi.nodes[j + 1]);
      }
    }
  }
}

TEST_CASE("bessel_series base cases and half-integer identity") {
  CHECK(bessel_series(0.5, 0.0) == doctest::Approx(0.0));
  CHECK(bessel_series(0.0, 0.0) == doctest::Approx(1.0));
  const double x = 1.0;
  CHECK(bessel_series(0.5, x) ==
        doctest::Approx(std::sqrt(2.0 / (M_PI * x)) * std::sin(x))
            .epsilon(1e-14));
}

TEST_CASE("bessel_series partial-sum increments alternate for x <= 2") {
  for (double mu : {0.0, 0.3, 1.0}) {
    for (double x : {0.5, 1.3, 2.0}) {
      double term = 1.0;
      for (int k = 1; k <= 30; ++k) {
        const double next = term * -(x * x) / (4.0 * k * (mu + k));
        CHECK(next * term < 0.0);
        term = next;
      }
    }
  }
}
