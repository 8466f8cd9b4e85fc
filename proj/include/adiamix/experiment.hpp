#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adiamix/gauge.hpp"
#include "adiamix/graph.hpp"
#include "adiamix/solution_space.hpp"

namespace adiamix {

/// Ordinary least squares y = slope * x + intercept.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  double residual_variance = 0.0;
  std::size_t points = 0;
};

/// Throws InvalidArgument for mismatched lengths, fewer than two points, or constant xs.
FitResult fit_linear(std::span<const double> xs, std::span<const double> ys);

/// Size of the maximum independent set expected in a G(n, n^2/4) graph:
/// 4 (ln(n / (4 ln(n/2))) + 1). Throws InvalidArgument for n <= 2.
double predicted_max_independent_size(double n);

enum class CaseKind { EdgesLinear, EdgesQuadratic };

/// m = n for the linear case, floor(n^2/4) for the quadratic one.
int edges_for(CaseKind kind, int n);

struct CaseConfig {
  int n_min = 8;
  int n_max = 18;
  int instances = 200;
  double theta = 0.0;
  std::uint64_t seed = 1;
  /// Average log values instead of taking the log of averages.
  bool log_first = false;
  /// Fill walltime_ms; off by default so output bytes depend only on the config.
  bool record_walltime = false;
  /// Worker threads; 0 picks hardware_concurrency.
  unsigned threads = 0;
  EnumerationLimits limits{40, std::size_t{1} << 24};
  PropagationOptions propagation{};
};

CaseConfig default_case1_config();
CaseConfig default_case2_config();

struct ExperimentRecord {
  int n = 0;
  int m = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  double theta = 0.0;
  std::size_t num_solutions = 0;
  double d_n = 0.0;
  double c_n = 0.0;
  /// Normalised entropy after 1, 2 and 3 loops (t = 2 pi, 4 pi, 6 pi).
  double sbar[3] = {0.0, 0.0, 0.0};
  int max_cardinality = 0;
  /// Quadratic case only; NaN otherwise.
  double predicted_max_cardinality = 0.0;
  double walltime_ms = 0.0;
};

struct InstanceFailure {
  int n = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  std::string message;
};

/// Per-n aggregates. Standard errors are of the mean over instances.
struct PointSummary {
  int n = 0;
  std::size_t count = 0;
  double mean_ns = 0.0;
  double se_ns = 0.0;
  double mean_log_ns = 0.0;
  double se_log_ns = 0.0;
  double mean_cn = 0.0;
  double se_cn = 0.0;
  double mean_log_cn = 0.0;
  double se_log_cn = 0.0;
};

struct CaseResult {
  CaseKind kind = CaseKind::EdgesLinear;
  std::vector<ExperimentRecord> records;
  std::vector<InstanceFailure> failures;
  std::vector<PointSummary> summary;
  /// Absent when fewer than three distinct n values have data.
  std::optional<FitResult> ns_fit;
  std::optional<FitResult> cn_fit;
};

/// One instance: sample the graph, enumerate, build the gauge matrix at theta,
/// apply the loop holonomy to the empty-set state and measure.
ExperimentRecord run_instance(CaseKind kind, int n, int instance, const CaseConfig& config);

/// Runs every (n, instance) in a worker pool. Records come back sorted by
/// (n, instance); per-instance seeds are derive_seed(config.seed, n, instance).
CaseResult run_case(CaseKind kind, const CaseConfig& config);
CaseResult run_case1(const CaseConfig& config);
CaseResult run_case2(const CaseConfig& config);

/// Linear case: log2<N_s> and log2<c_n> against n.
/// Quadratic case: ln<N_s> against ln(n / ln(n/2)) and ln<c_n> against ln n.
void summarize_and_fit(CaseResult& result, bool log_first);

/// Header "n,m,seed,theta,Ns,dn,cn,Sbar2pi,max_card,walltime_ms".
void write_case_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> parse_case_csv(const std::string& text);
void write_summary_csv(std::ostream& out, std::span<const PointSummary> summary);
/// {"slope", "intercept", "stderr", "points", ...}; null for an absent fit.
std::string fit_to_json(const std::optional<FitResult>& fit);
/// Whole run as JSON: records, failures, summary and both fits.
std::string case_result_to_json(const CaseResult& result);

struct EntropySample {
  double t = 0.0;
  double s = 0.0;
  double sbar = 0.0;
};

/// Normalised entropy of exp(i t A) delta_empty at `samples` evenly spaced
/// t in [0, t_max] (both ends included when samples >= 2).
std::vector<EntropySample> entropy_trace(const Graph& g, double theta, double t_max, int samples,
                                         const EnumerationLimits& limits = {},
                                         const PropagationOptions& options = {});

/// Same, over a prepared gauge matrix and basis size.
std::vector<EntropySample> entropy_trace(const GaugeMatrix& a, double t_max, int samples,
                                         const PropagationOptions& options = {});

/// CSV "t,S,Sbar".
void write_entropy_csv(std::ostream& out, std::span<const EntropySample> trace);

}  // namespace adiamix
