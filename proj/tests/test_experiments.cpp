#include "fjac/experiments.hpp"

#include <cmath>
#include <stdexcept>
#include <cstdio>
#include <random>

#include "doctest.h"

using namespace fjac;

TEST_CASE("catalog contents") {
  const auto& entries = catalog();
  REQUIRE(entries.size() == 6);
  for (const char* id : {"ex1", "ex2", "ex3", "ex4i", "ex4ii", "ex4iii"})
    CHECK_NOTHROW(catalog_entry(id));
  CHECK_THROWS_AS(catalog_entry("nope"), std::invalid_argument);

  SUBCASE("ex1 is the smooth exp-kernel problem") {
    const VieProblem p = catalog_entry("ex1").make_problem(0.5);
    CHECK(p.source(0.3) == 1.0);
    CHECK(p.kernel(0.7, 0.2) == doctest::Approx(std::exp(0.5)));
    CHECK_FALSE(p.exact.has_value());
  }
  SUBCASE("ex4i source closed form at x = 1, mu = 0.1") {
    const VieProblem p = catalog_entry("ex4i").make_problem(0.1);
    const double expected =
        2.0 - beta_fn(0.9, 4.0 / 3.0) - beta_fn(0.9, 1.5);
    CHECK(p.source(1.0) == doctest::Approx(expected).epsilon(1e-14));
    REQUIRE(p.exact.has_value());
    CHECK((*p.exact)(0.25) ==
          doctest::Approx(std::cbrt(0.25) + 0.5).epsilon(1e-14));
  }
  SUBCASE("ex4ii exact solution") {
    const VieProblem p = catalog_entry("ex4ii").make_problem(0.5);
    REQUIRE(p.exact.has_value());
    CHECK((*p.exact)(0.5) ==
          doctest::Approx(std::pow(0.5, 1.1) + std::pow(0.5, 2.3))
              .epsilon(1e-14));
  }
  SUBCASE("ex3 source vanishes against the exact solution at small N sanity") {
    const VieProblem p = catalog_entry("ex3").make_problem(0.5);
    REQUIRE(p.exact.has_value());
    // u(x) = x^{-1/2} sin x is bounded with u(0+) -> 0 for mu = 1/2
    CHECK((*p.exact)(0.04) ==
          doctest::Approx(std::sin(0.04) / 0.2).epsilon(1e-13));
    CHECK(std::isfinite(p.source(0.3)));
  }
}

TEST_CASE("manufactured_source matches a closed-form convolution") {
  const double mu = 0.3;
  ScalarFn u = [](double x) { return std::sqrt(x); };
  ScalarFn g = manufactured_source(mu, u);
  for (double x : {0.2, 0.6, 1.0}) {
    const double conv = beta_fn(1.0 - mu, 1.5) * std::pow(x, 1.5 - mu);
    CHECK(g(x) == doctest::Approx(std::sqrt(x) - conv).epsilon(1e-11));
  }
  CHECK(g(0.0) == 0.0);
}

TEST_CASE("sweep on an exact-solution entry") {
  const CatalogEntry& entry = catalog_entry("ex4i");
  const ConvergenceReport rep =
      sweep(entry, 0.1, 1.0 / 6.0, -0.5, -0.5, {4, 8, 12, 16});
  CHECK(rep.problem_id == "ex4i");
  CHECK_FALSE(rep.aborted);
  REQUIRE(rep.records.size() == 4);
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    CHECK(r.linf >= 0.0);
    CHECK(r.l2w >= 0.0);
    CHECK(r.cond_estimate >= 1.0);
    if (i) CHECK(r.n > rep.records[i - 1].n);
  }
  // lambda = 1/6 puts the solution in the basis span from N = 3 on, so the
  // only remaining error is the quadrature resolution of the assembly
  for (const auto& r : rep.records) CHECK(r.linf <= 1e-6);
  CHECK(rep.records.back().linf <= 1e-10);

  // with lambda = 1 the error decays algebraically instead
  const ConvergenceReport alg = sweep(entry, 0.1, 1.0, -0.5, -0.5,
                                      {4, 8, 16, 32, 64});
  REQUIRE(alg.fitted_linf.has_value());
  CHECK(alg.fitted_linf->slope_loglog < -0.3);
  CHECK(alg.fitted_linf->r2_loglog > 0.9);
}

TEST_CASE("fit_rates on synthetic data") {
  SUBCASE("algebraic decay c N^{-3}") {
    std::vector<ConvergenceRecord> recs;
    for (int n : {4, 8, 16, 32, 64})
      recs.push_back({n, 2.0 * std::pow(n, -3.0), std::pow(n, -3.0), 0, 0, 1});
    const RateFit fit = fit_rates(recs, 4, 64);
    CHECK(fit.slope_loglog == doctest::Approx(-3.0).epsilon(1e-10));
    CHECK(fit.r2_loglog == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.preferred == FitPreference::kLogLog);
    const RateFit fit2 = fit_rates(recs, 4, 64, true);
    CHECK(fit2.slope_loglog == doctest::Approx(-3.0).epsilon(1e-10));
  }
  SUBCASE("geometric decay c rho^N") {
    std::vector<ConvergenceRecord> recs;
    const double rho = 0.5;
    for (int n : {4, 8, 12, 16, 20})
      recs.push_back({n, 3.0 * std::pow(rho, n), 0.0, 0, 0, 1});
    const RateFit fit = fit_rates(recs, 4, 20);
    CHECK(fit.slope_semilog == doctest::Approx(std::log(rho)).epsilon(1e-10));
    CHECK(fit.preferred == FitPreference::kSemiLog);
    CHECK(fit.r2_semilog == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("plateau rows are excluded") {
    std::vector<ConvergenceRecord> recs;
    for (int n : {4, 8, 16, 32})
      recs.push_back({n, std::pow(n, -2.0), 0.0, 0, 0, 1});
    recs.push_back({64, 1e-15, 0.0, 0, 0, 1});
    const RateFit fit = fit_rates(recs, 4, 64);
    CHECK(fit.slope_loglog == doctest::Approx(-2.0).epsilon(1e-10));
  }
  SUBCASE("too few usable records throws") {
    std::vector<ConvergenceRecord> recs = {{4, 0.1, 0.1, 0, 0, 1},
                                           {8, 0.01, 0.01, 0, 0, 1}};
    CHECK_THROWS_AS(fit_rates(recs, 4, 8), std::runtime_error);
  }
}

TEST_CASE("CSV round-trip is bitwise exact") {
  ConvergenceReport rep;
  rep.problem_id = "ex4ii";
  rep.mu = 0.5;
  rep.lambda = 0.1;
  rep.alpha = -0.5;
  rep.beta = -0.5;
  rep.records = {{4, 0.1234567890123456, 3.0e-17, 1.5, 0.25, 12.0},
                 {8, 1.0 / 3.0, 2.0 / 7.0, 0.0, 0.0, 1.0e8}};
  const std::string path = "fjac_test_roundtrip.csv";
  write_csv(rep, path);
  const auto back = read_csv_records(path);
  REQUIRE(back.size() == rep.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].n == rep.records[i].n);
    CHECK(back[i].linf == rep.records[i].linf);
    CHECK(back[i].l2w == rep.records[i].l2w);
    CHECK(back[i].assemble_ms == rep.records[i].assemble_ms);
    CHECK(back[i].solve_ms == rep.records[i].solve_ms);
    CHECK(back[i].cond_estimate == rep.records[i].cond_estimate);
  }
  std::remove(path.c_str());
}

TEST_CASE("sweeps are deterministic") {
  const CatalogEntry& entry = catalog_entry("ex1");
  const ConvergenceReport a = sweep(entry, 0.5, 0.5, -0.5, -0.5, {4, 8, 12});
  const ConvergenceReport b = sweep(entry, 0.5, 0.5, -0.5, -0.5, {4, 8, 12});
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].linf == b.records[i].linf);
    CHECK(a.records[i].l2w == b.records[i].l2w);
    CHECK(a.records[i].cond_estimate == b.records[i].cond_estimate);
  }
}

TEST_CASE("high-N reference is consistent with the exact solution") {
  // run ex4ii both ways: errors from the surrogate reference should agree
  // with errors from the closed form once the reference is well resolved
  const CatalogEntry& entry = catalog_entry("ex4ii");
  const std::vector<int> ns = {4, 8, 12};
  const ConvergenceReport exact_rep = sweep(entry, 0.5, 1.0, -0.5, -0.5, ns);
  SweepOptions opt;
  opt.force_high_n_reference = true;
  opt.n_ref_override = 64;
  const ConvergenceReport surr_rep =
      sweep(entry, 0.5, 1.0, -0.5, -0.5, ns, opt);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (exact_rep.records[i].linf < 1e-12) continue;
    CHECK(surr_rep.records[i].linf ==
          doctest::Approx(exact_rep.records[i].linf).epsilon(0.2));
  }
}

TEST_CASE("errors decrease overall across a sweep") {
  const CatalogEntry& entry = catalog_entry("ex4ii");
  const ConvergenceReport rep =
      sweep(entry, 0.5, 1.0, -0.5, -0.5, {4, 8, 16, 32});
  REQUIRE(rep.records.size() == 4);
  CHECK(rep.records.back().linf < 0.5 * rep.records.front().linf);
  CHECK(rep.records.back().l2w < 0.5 * rep.records.front().l2w);
}
