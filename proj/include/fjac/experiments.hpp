#ifndef FJAC_EXPERIMENTS_HPP_
#define FJAC_EXPERIMENTS_HPP_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fjac/solver.hpp"

namespace fjac {

enum class ReferencePolicy { kExact, kHighN };

struct CatalogEntry {
  std::string id;
  std::function<VieProblem(double mu)> make_problem;
  ReferencePolicy reference_policy;
  int n_ref;  // 0 = auto (max(2 N_max, 80)); used for kHighN only
  std::string notes;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& id);

struct ConvergenceRecord {
  int n;
  double linf;
  double l2w;
  double assemble_ms;
  double solve_ms;
  double cond_estimate;
};

enum class FitPreference { kLogLog, kSemiLog };

struct RateFit {
  double slope_loglog;   // d log(err) / d log(N)
  double slope_semilog;  // d log(err) / d N
  FitPreference preferred;
  double r2_loglog;
  double r2_semilog;
};

struct ConvergenceReport {
  std::string problem_id;
  double mu, lambda, alpha, beta;
  std::vector<ConvergenceRecord> records;
  std::optional<RateFit> fitted_linf;
  std::optional<RateFit> fitted_l2w;
  bool aborted = false;  // solver failure mid-sweep; partial records kept
};

/// Least-squares decay-rate fit over records with n_lo <= N <= n_hi, on the
/// L-infinity column (use_l2w = false) or the weighted L2 column. Records at
/// the double-precision plateau (error < 1e-12) are excluded. Throws
/// std::runtime_error when fewer than 3 usable records remain.
RateFit fit_rates(const std::vector<ConvergenceRecord>& records, int n_lo,
                  int n_hi, bool use_l2w = false);

struct SweepOptions {
  std::optional<std::pair<int, int>> fit_window;  // default: full n range
  std::optional<int> n_ref_override;
  bool force_high_n_reference = false;
  int grid_size = 2000;
};

ConvergenceReport sweep(const CatalogEntry& entry, double mu, double lambda,
                        double alpha, double beta,
                        const std::vector<int>& n_list,
                        const SweepOptions& options = {});

void write_csv(const ConvergenceReport& report, const std::string& path);

/// Parse back the numeric rows of a CSV written by write_csv (test oracle
/// and round-trip support).
std::vector<ConvergenceRecord> read_csv_records(const std::string& path);

/// g(x) = u(x) - int_0^x (x-s)^{-mu} u(s) ds for a smooth-after-mapping u,
/// the integral evaluated with a fixed high-order rule under the
/// s = x theta^{1/lambda_g} substitution. Used to manufacture sources for
/// catalog entries without a closed-form convolution.
ScalarFn manufactured_source(double mu, ScalarFn u, double lambda_g = 0.125,
                             int npoints = 200);

}  // namespace fjac

#endif  // FJAC_EXPERIMENTS_HPP_
