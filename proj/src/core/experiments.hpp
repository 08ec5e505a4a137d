#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metrics.hpp"

namespace umo {

/**
 * A named pair of closed-form distributions with the ground-truth
 * P(A > B), filled in by annotate_oracle.
 */
struct Scenario {
  std::string name;
  DistributionSpec a;
  DistributionSpec b;
  double oracle = 0.0;
  bool has_oracle = false;
};

// The five shipped scenario pairs used throughout the error experiments.
std::vector<Scenario> builtin_scenarios();

// Text format, one scenario per line: `name spec_a spec_b`, whitespace
// separated, # starts a comment.
std::vector<Scenario> load_scenarios(const std::string& path);

void annotate_oracle(std::vector<Scenario>& scenarios,
                     std::int64_t resolution = 1000000);

// ------------------------------------------------------------- error sweep

struct SweepConfig {
  std::vector<std::string> operators = {"pw",  "uni1", "uni2", "gauss",
                                        "hist:0.1", "emp",  "reduce"};
  std::vector<std::size_t> sample_sizes = {100, 1000, 10000};
  int repetitions = 200;
  double percentile = 0.99;
  std::uint64_t seed = 1;
  // Hand the operators the distribution specs themselves instead of fresh
  // samples per repetition (exact-family studies; index-paired comparison
  // cannot run in this mode).
  bool closed_form = false;
  std::int64_t oracle_resolution = 1000000;
  OperatorConfig op_cfg;
};

struct SweepRow {
  std::string scenario;
  std::string op;
  std::size_t n = 0;
  double err = 0.0;
};

std::vector<SweepRow> run_error_sweep(std::vector<Scenario> scenarios,
                                      const SweepConfig& cfg);

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows, double percentile);

// ------------------------------------------------------------------ timing

struct TimingConfig {
  std::vector<std::string> operators = {"pw",   "uni1",   "uni2",
                                        "gauss", "hist:0.1", "emp",
                                        "reduce", "mean",  "threestage"};
  std::vector<std::size_t> sample_sizes = {10, 100, 1000};
  int min_invocations = 1000;
  std::uint64_t seed = 1;
  OperatorConfig op_cfg;
};

struct TimingRow {
  std::string op;
  std::size_t n = 0;
  double init_us = 0.0;
  double cmp_us = 0.0;
};

// Median per-call wall time over batched invocations with warmup; init is
// the raw-samples-to-prepared-state step, cmp one prepared comparison.
std::vector<TimingRow> run_timing(const TimingConfig& cfg);

void write_timing_csv(const std::string& path,
                      const std::vector<TimingRow>& rows);
// Machine/build context sidecar, so recorded numbers can be judged later.
void write_timing_info(const std::string& path);

// ---------------------------------------------------------- optimize runs

struct OptimizeJob {
  std::string problem = "udtlz2";
  ProblemOptions options;
  OptimizerConfig optimizer;  // seed is the base; run r uses seed + r
  int runs = 10;
  int dci_divisions = 20;
  std::string out_dir = ".";
};

struct OptimizeOutcome {
  std::vector<std::string> run_files;
  std::vector<std::string> metric_files;
  std::string reference_file;
  std::string metrics_file;
  std::string median_file;
  std::size_t median_run = 0;
  bool additive_eps = false;
};

OptimizeOutcome run_optimize_job(const OptimizeJob& job);

// ----------------------------------------------------------- metric tables

struct MetricsTable {
  bool additive = false;  // multiplicative epsilon was undefined somewhere
  std::vector<int> gens;
  std::vector<std::vector<double>> eps;        // [run][generation index]
  std::vector<std::vector<double>> dci_score;  // [run][generation index]
  std::vector<std::vector<double>> diag;       // [run][generation index]
};

MetricsTable compute_metrics(const std::vector<RunRecord>& runs,
                             const std::vector<FrontPoint>& reference,
                             int divisions);

void write_run_metrics_csv(const std::string& path, const MetricsTable& table,
                           std::size_t run);
void write_median_metrics_csv(const std::string& path,
                              const MetricsTable& table);

// The standalone pipeline: parse run CSVs and a reference front, recompute
// metric traces, write the median table to out_path.
MetricsTable metrics_from_files(const std::vector<std::string>& run_files,
                                const std::string& reference_file,
                                int divisions, const std::string& out_path);

}  // namespace umo
