// Command-line front end over the shared library.  Everything here goes
// through the public C interface; the core stays behind umo/umo.h.

#include <charconv>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "umo/umo.h"

namespace {

struct cli_failure {
  umo_status status;
  std::string message;
};

void check(umo_status status) {
  if (status != UMO_OK) throw cli_failure{status, umo_last_error()};
}

// Usage, file and config problems exit 2; domain failures exit 3.
int exit_code_for(umo_status status) {
  switch (status) {
    case UMO_OK:
      return 0;
    case UMO_ERR_PARSE:
    case UMO_ERR_IO:
    case UMO_ERR_CONFIG:
    case UMO_ERR_UNKNOWN_OPERATOR:
    case UMO_ERR_UNKNOWN_PROBLEM:
      return 2;
    default:
      return 3;
  }
}

// Shortest decimal form that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int to_sense(const std::string& sense) {
  return sense == "max" ? UMO_MAXIMIZE : UMO_MINIMIZE;
}

void add_compare_options(CLI::App* cmd, umo_compare_options& opts,
                         std::string& sense) {
  cmd->add_option("--gamma", opts.gamma,
                  "decision threshold, 0.5 (majority) to 1 (certainty)")
      ->capture_default_str();
  cmd->add_option("--omega", opts.omega, "histogram bin width")
      ->capture_default_str();
  cmd->add_option("--steps", opts.quantile_steps,
                  "sample count when a closed form feeds a sample operator")
      ->capture_default_str();
  cmd->add_option("--mean-threshold", opts.mean_threshold,
                  "three-stage mean gate")
      ->capture_default_str();
  cmd->add_option("--spread-threshold", opts.spread_threshold,
                  "three-stage spread gate")
      ->capture_default_str();
  cmd->add_option("--sense", sense, "objective sense, min or max")
      ->check(CLI::IsMember({"min", "max"}))
      ->capture_default_str();
}

const char* opt_cstr(const std::string& s) {
  return s.empty() ? nullptr : s.c_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comparison toolkit for uncertain multi-objective values"};
  app.set_config("--config", "",
                 "read options from an INI-style file (sections name "
                 "subcommands; flags on the command line win)");
  app.require_subcommand(1);

  umo_compare_options copts;
  umo_compare_options_init(&copts);
  std::string sense = "min";

  // ---- compare ---------------------------------------------------------
  auto* cmp = app.add_subcommand(
      "compare", "compare two uncertain values with one operator");
  std::string cmp_spec_a, cmp_spec_b, cmp_file_a, cmp_file_b;
  std::string cmp_op = "emp";
  auto* spec_a_opt = cmp->add_option("--spec-a", cmp_spec_a,
                                     "closed-form side A, e.g. beta(2,5)");
  auto* file_a_opt = cmp->add_option("--samples-a", cmp_file_a,
                                     "sample file for side A, one value per line");
  auto* spec_b_opt = cmp->add_option("--spec-b", cmp_spec_b,
                                     "closed-form side B");
  auto* file_b_opt = cmp->add_option("--samples-b", cmp_file_b,
                                     "sample file for side B");
  spec_a_opt->excludes(file_a_opt);
  spec_b_opt->excludes(file_b_opt);
  cmp->add_option("--op", cmp_op, "comparison operator")->capture_default_str();
  add_compare_options(cmp, copts, sense);
  cmp->callback([&] {
    if (cmp_spec_a.empty() && cmp_file_a.empty())
      throw cli_failure{UMO_ERR_CONFIG, "compare needs --spec-a or --samples-a"};
    if (cmp_spec_b.empty() && cmp_file_b.empty())
      throw cli_failure{UMO_ERR_CONFIG, "compare needs --spec-b or --samples-b"};
    copts.sense = to_sense(sense);
    umo_value* a = nullptr;
    umo_value* b = nullptr;
    check(cmp_spec_a.empty() ? umo_value_load(cmp_file_a.c_str(), &a)
                             : umo_value_from_spec(cmp_spec_a.c_str(), &a));
    umo_status status = cmp_spec_b.empty()
                            ? umo_value_load(cmp_file_b.c_str(), &b)
                            : umo_value_from_spec(cmp_spec_b.c_str(), &b);
    umo_report report{};
    if (status == UMO_OK)
      status = umo_compare(a, b, cmp_op.c_str(), &copts, &report);
    std::string message = umo_last_error();
    umo_value_free(a);
    umo_value_free(b);
    if (status != UMO_OK) throw cli_failure{status, std::move(message)};
    std::printf("op,p_greater,p_less,decision\n");
    std::printf("%s,%s,%s,%s\n", cmp_op.c_str(), fmt(report.p_greater).c_str(),
                fmt(report.p_less).c_str(),
                umo_decision_name(report.decision));
  });

  // ---- scenario-error --------------------------------------------------
  auto* sweep = app.add_subcommand(
      "scenario-error",
      "estimation-error percentiles per scenario, operator and sample size");
  std::string sw_scenarios, sw_ops, sw_sizes;
  std::string sw_out = "errors.csv";
  int sw_reps = 200;
  double sw_percentile = 0.99;
  unsigned long long sw_seed = 1;
  bool sw_closed = false;
  sweep->add_option("--scenarios", sw_scenarios,
                    "scenario file: `name spec_a spec_b` per line "
                    "(default: built-in set)");
  sweep->add_option("--ops", sw_ops, "comma-separated operator list");
  sweep->add_option("--sizes", sw_sizes, "comma-separated sample sizes");
  sweep->add_option("--reps", sw_reps, "repetitions per cell")
      ->capture_default_str();
  sweep->add_option("--percentile", sw_percentile, "error percentile to report")
      ->capture_default_str();
  sweep->add_option("--seed", sw_seed, "sweep seed")->capture_default_str();
  sweep->add_flag("--closed-form", sw_closed,
                  "hand operators the distribution specs instead of samples");
  sweep->add_option("--out", sw_out, "output CSV")->capture_default_str();
  add_compare_options(sweep, copts, sense);
  sweep->callback([&] {
    copts.sense = to_sense(sense);
    check(umo_error_sweep(opt_cstr(sw_scenarios), opt_cstr(sw_ops),
                          opt_cstr(sw_sizes), sw_reps, sw_percentile, sw_seed,
                          sw_closed ? 1 : 0, &copts, sw_out.c_str()));
    std::printf("wrote %s\n", sw_out.c_str());
  });

  // ---- timing ----------------------------------------------------------
  auto* timing = app.add_subcommand(
      "timing", "median per-call setup and comparison cost per operator");
  std::string tm_ops, tm_sizes, tm_info;
  std::string tm_out = "timing.csv";
  int tm_min = 1000;
  unsigned long long tm_seed = 1;
  timing->add_option("--ops", tm_ops, "comma-separated operator list");
  timing->add_option("--sizes", tm_sizes, "comma-separated sample sizes");
  timing->add_option("--min-invocations", tm_min,
                     "lower bound on timed calls per cell")
      ->capture_default_str();
  timing->add_option("--seed", tm_seed, "data seed")->capture_default_str();
  timing->add_option("--out", tm_out, "output CSV")->capture_default_str();
  timing->add_option("--info", tm_info,
                     "also write a build/machine context file here");
  add_compare_options(timing, copts, sense);
  timing->callback([&] {
    copts.sense = to_sense(sense);
    check(umo_timing(opt_cstr(tm_ops), opt_cstr(tm_sizes), tm_min, tm_seed,
                     &copts, tm_out.c_str(), opt_cstr(tm_info)));
    std::printf("wrote %s\n", tm_out.c_str());
  });

  // ---- optimize --------------------------------------------------------
  auto* opt = app.add_subcommand(
      "optimize", "evolutionary runs on an uncertain benchmark, plus metrics");
  umo_optimize_options oopts;
  umo_optimize_options_init(&oopts);
  std::string op_problem = "udtlz2";
  std::string op_op = "reduce";
  std::string op_dir = ".";
  bool op_noise = true;
  bool op_stddev = false;
  opt->add_option("--problem", op_problem, "benchmark name, udtlz1..udtlz6")
      ->capture_default_str();
  opt->add_option("--n", oopts.n, "decision variables")->capture_default_str();
  opt->add_option("--m", oopts.m, "objectives")->capture_default_str();
  opt->add_flag("--noise,!--no-noise", op_noise, "perturb evaluations")
      ->capture_default_str();
  opt->add_flag("--stddev-noise", op_stddev,
                "read the noise scale as a standard deviation");
  opt->add_option("--lambda", oopts.population, "population size")
      ->capture_default_str();
  opt->add_option("--generations", oopts.generations, "generation count")
      ->capture_default_str();
  opt->add_option("--samples", oopts.samples, "draws per objective evaluation")
      ->capture_default_str();
  opt->add_option("--seed", oopts.seed, "base seed; run r adds r")
      ->capture_default_str();
  opt->add_option("--op", op_op, "dominance operator")->capture_default_str();
  opt->add_option("--runs", oopts.runs, "independent runs")
      ->capture_default_str();
  opt->add_option("--divisions", oopts.dci_divisions,
                  "diversity metric grid divisions")
      ->capture_default_str();
  opt->add_option("--crossover-probability", oopts.crossover_probability)
      ->capture_default_str();
  opt->add_option("--crossover-index", oopts.crossover_index)
      ->capture_default_str();
  opt->add_option("--mutation-probability", oopts.mutation_probability,
                  "negative means 1/n")
      ->capture_default_str();
  opt->add_option("--mutation-index", oopts.mutation_index)
      ->capture_default_str();
  opt->add_option("--out-dir", op_dir, "output directory")
      ->capture_default_str();
  add_compare_options(opt, copts, sense);
  opt->callback([&] {
    copts.sense = to_sense(sense);
    oopts.problem = op_problem.c_str();
    oopts.op = op_op.c_str();
    oopts.noise = op_noise ? 1 : 0;
    oopts.stddev_noise = op_stddev ? 1 : 0;
    check(umo_optimize(&oopts, &copts, op_dir.c_str()));
    std::printf("wrote runs, reference front and metrics under %s\n",
                op_dir.c_str());
  });

  // ---- metrics ---------------------------------------------------------
  auto* met = app.add_subcommand(
      "metrics", "recompute metric medians from run CSVs and a reference front");
  std::vector<std::string> me_runs;
  std::string me_reference;
  std::string me_out = "metrics.csv";
  int me_divisions = 20;
  met->add_option("--runs", me_runs, "run CSV files")->required();
  met->add_option("--reference", me_reference, "reference front CSV")
      ->required();
  met->add_option("--divisions", me_divisions,
                  "diversity metric grid divisions")
      ->capture_default_str();
  met->add_option("--out", me_out, "output CSV")->capture_default_str();
  met->callback([&] {
    std::vector<const char*> files;
    files.reserve(me_runs.size());
    for (const std::string& f : me_runs) files.push_back(f.c_str());
    check(umo_metrics(files.data(), files.size(), me_reference.c_str(),
                      me_divisions, me_out.c_str()));
    std::printf("wrote %s\n", me_out.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const cli_failure& f) {
    std::fprintf(stderr, "error: %s (%s)\n", f.message.c_str(),
                 umo_status_name(f.status));
    return exit_code_for(f.status);
  }
  return 0;
}
