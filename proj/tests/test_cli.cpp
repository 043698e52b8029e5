#include "fjac/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fjac/experiments.hpp"

using namespace fjac;
using namespace fjac::cli;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::ofstream out(name);
  out << body;
  return name;
}

int run(const std::vector<std::string>& argv, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run_main(argv, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("parse_real_or_rational") {
  CHECK(parse_real_or_rational("0.5") == 0.5);
  CHECK(parse_real_or_rational("1/6") == 1.0 / 6.0);
  CHECK(parse_real_or_rational("2/4") == 0.5);
  CHECK(parse_real_or_rational("-1/2") == -0.5);
  CHECK_THROWS_AS(parse_real_or_rational("1/0"), UsageError);
  CHECK_THROWS_AS(parse_real_or_rational("abc"), UsageError);
  CHECK_THROWS_AS(parse_real_or_rational(""), UsageError);
}

TEST_CASE("parse_args sweep") {
  const RunConfig cfg = parse_args(
      {"sweep", "--problem", "ex4i", "--mu", "0.1", "--lambda", "1/6",
       "--alpha", "-0.5", "--beta", "-0.5", "--n-min", "4", "--n-max", "32",
       "--n-step", "4", "--out", "run.csv"});
  CHECK(cfg.subcommand == Subcommand::kSweep);
  CHECK(cfg.problem == "ex4i");
  CHECK(cfg.mu == 0.1);
  CHECK(cfg.lambda == 1.0 / 6.0);
  CHECK(cfg.n_min == 4);
  CHECK(cfg.n_max == 32);
  CHECK(cfg.n_step == 4);
  REQUIRE(cfg.out_path.has_value());
  CHECK(*cfg.out_path == "run.csv");
}

TEST_CASE("parse_args solve defaults and errors") {
  const RunConfig cfg = parse_args({"solve", "--problem", "ex1", "--n", "12"});
  CHECK(cfg.subcommand == Subcommand::kSolve);
  CHECK(cfg.n == 12);
  CHECK(cfg.lambda == 1.0);
  CHECK(cfg.alpha == -0.5);

  CHECK_THROWS_AS(parse_args({}), UsageError);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({"solve"}), UsageError);  // missing --problem
  CHECK_THROWS_AS(
      parse_args({"solve", "--problem", "ex1", "--lambda", "0"}), UsageError);
  CHECK_THROWS_AS(
      parse_args({"solve", "--problem", "ex1", "--mu", "1.5"}), UsageError);
  CHECK_THROWS_AS(
      parse_args({"solve", "--problem", "ex1", "--unknown", "1"}), UsageError);
  CHECK_THROWS_AS(parse_args({"sweep", "--problem", "ex1", "--n-min", "8",
                              "--n-max", "4"}),
                  UsageError);
}

TEST_CASE("load_problem_file") {
  const std::string path = write_temp("fjac_test_problem.txt",
                                      "# manufactured constant solution\n"
                                      "mu = 0.5\n"
                                      "kernel = 1\n"
                                      "source = 1 - 2*x^0.5\n"
                                      "exact = 1\n"
                                      "exact_at_zero = 1\n");
  const VieProblem p = load_problem_file(path);
  CHECK(p.mu == 0.5);
  CHECK(p.kernel(0.3, 0.1) == 1.0);
  CHECK(p.source(0.25) == doctest::Approx(0.0).epsilon(1e-15));
  REQUIRE(p.exact.has_value());
  CHECK((*p.exact)(0.0) == 1.0);
  CHECK((*p.exact)(0.7) == 1.0);
  std::remove(path.c_str());

  const std::string bad = write_temp("fjac_test_problem_bad.txt",
                                     "kernel = 1\nsource = x\n");
  CHECK_THROWS_AS(load_problem_file(bad), std::runtime_error);  // missing mu
  std::remove(bad.c_str());
  CHECK_THROWS_AS(load_problem_file("no_such_file.txt"), std::runtime_error);
}

TEST_CASE("run_main solve prints the solution summary") {
  std::string out;
  const int rc = run({"solve", "--problem", "ex4ii", "--mu", "0.5",
                      "--lambda", "1", "--n", "20"},
                     &out);
  CHECK(rc == 0);
  CHECK(out.find("REC 20 ") != std::string::npos);
}

TEST_CASE("run_main usage errors exit with 1") {
  std::string err;
  CHECK(run({"solve", "--problem", "ex1", "--lambda", "0"}, nullptr, &err) ==
        1);
  CHECK_FALSE(err.empty());
  CHECK(run({"bogus"}, nullptr, &err) == 1);
  CHECK(run({"solve", "--problem", "no_such_id_or_file"}, nullptr, &err) == 1);
}

TEST_CASE("run_main sweep writes the CSV and prints REC/FIT lines") {
  std::string out;
  const std::string csv = "fjac_test_cli_sweep.csv";
  const int rc = run({"sweep", "--problem", "ex4i", "--mu", "0.1", "--lambda",
                      "1/6", "--n-min", "4", "--n-max", "16", "--n-step", "4",
                      "--out", csv},
                     &out);
  CHECK(rc == 0);
  CHECK(out.find("REC 4 ") != std::string::npos);
  CHECK(out.find("REC 16 ") != std::string::npos);

  const auto records = read_csv_records(csv);
  REQUIRE(records.size() == 4);
  CHECK(records.front().n == 4);
  CHECK(records.back().n == 16);
  CHECK(records.back().linf <= 1e-9);

  std::ifstream in(csv);
  std::string first;
  std::getline(in, first);
  CHECK(first == "N,linf,l2w,assemble_ms,solve_ms,cond");
  bool saw_params = false;
  for (std::string line; std::getline(in, line);)
    if (line.rfind("# mu=", 0) == 0) saw_params = true;
  CHECK(saw_params);
  in.close();
  std::remove(csv.c_str());
}

TEST_CASE("run_main sweep prints FIT lines for algebraic decay") {
  std::string out;
  const int rc = run({"sweep", "--problem", "ex4ii", "--mu", "0.5",
                      "--lambda", "1", "--n-min", "4", "--n-max", "32",
                      "--n-step", "4"},
                     &out);
  CHECK(rc == 0);
  CHECK(out.find("FIT linf") != std::string::npos);
  CHECK(out.find("FIT l2w") != std::string::npos);
  CHECK(out.find("preferred loglog") != std::string::npos);
}

TEST_CASE("run_main solve accepts a problem file") {
  const std::string path = write_temp(
      "fjac_test_problem2.txt",
      "mu = 0.5\n"
      "kernel = 1\n"
      "source = 1 - 2*x^0.5\n"
      "exact = 1\n"
      "exact_at_zero = 1\n");
  std::string out;
  const int rc =
      run({"solve", "--problem", path, "--n", "8", "--lambda", "1/2"}, &out);
  CHECK(rc == 0);
  std::remove(path.c_str());
}

TEST_CASE("run_verify passes and run_main verify exits 0") {
  std::ostringstream sink;
  CHECK(run_verify(sink));
  CHECK_FALSE(sink.str().empty());
  std::string out;
  CHECK(run({"verify"}, &out) == 0);
}
