#ifndef FJAC_CLI_HPP_
#define FJAC_CLI_HPP_

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fjac/solver.hpp"

namespace fjac::cli {

enum class Subcommand { kSolve, kSweep, kVerify };

enum class ReferenceOverride { kAuto, kExact, kFixedN };

struct RunConfig {
  Subcommand subcommand;
  std::string problem;  // catalog id or path to a problem file
  double mu = 0.5;
  double lambda = 1.0;
  double alpha = -0.5;
  double beta = -0.5;
  int n = 16;                       // solve
  int n_min = 4, n_max = 32, n_step = 4;  // sweep
  std::optional<std::pair<int, int>> fit_window;
  std::optional<std::string> out_path;
  ReferenceOverride reference = ReferenceOverride::kAuto;
  int reference_n = 0;  // kFixedN only
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational literals like "1/6" are parsed as exact integer division.
double parse_real_or_rational(const std::string& text);

RunConfig parse_args(const std::vector<std::string>& argv);

/// Line-oriented key=value problem file: mu=, kernel= (expr in x,s),
/// source= (expr in x), optional exact= (expr in x), exact_at_zero= (real).
VieProblem load_problem_file(const std::string& path);

/// Built-in invariant suite behind the `verify` subcommand.
bool run_verify(std::ostream& out);

/// Exit codes: 0 success, 1 usage error, 2 numeric failure, 3 verify failure.
int run_main(const std::vector<std::string>& argv, std::ostream& out,
             std::ostream& err);

}  // namespace fjac::cli

#endif  // FJAC_CLI_HPP_
