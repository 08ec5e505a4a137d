#include "umo/umo.h"

#include <exception>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/comparators.hpp"
#include "core/experiments.hpp"
#include "core/text.hpp"

struct umo_value {
  umo::Comparand c;
};

namespace {

// One slot per thread so concurrent callers never trample each other's
// diagnostics.
thread_local std::string g_last_error;

void set_last_error(const char* what) { g_last_error = what ? what : ""; }

// The public status enum tracks the internal error enum value-for-value.
#define UMO_CHECK_CODE(status, code)                                        \
  static_assert(static_cast<int>(status) ==                                 \
                static_cast<int>(umo::ErrorCode::code))
UMO_CHECK_CODE(UMO_OK, None);
UMO_CHECK_CODE(UMO_ERR_PARSE, Parse);
UMO_CHECK_CODE(UMO_ERR_IO, Io);
UMO_CHECK_CODE(UMO_ERR_CONFIG, Config);
UMO_CHECK_CODE(UMO_ERR_INVALID_ARGUMENT, InvalidArgument);
UMO_CHECK_CODE(UMO_ERR_INVALID_POPULATION, InvalidPopulation);
UMO_CHECK_CODE(UMO_ERR_INVALID_PROBABILITY, InvalidProbability);
UMO_CHECK_CODE(UMO_ERR_DEGENERATE_VARIANCE, DegenerateVariance);
UMO_CHECK_CODE(UMO_ERR_WRONG_REPRESENTATION, WrongRepresentation);
UMO_CHECK_CODE(UMO_ERR_UNBOUNDED_SUPPORT, UnboundedSupport);
UMO_CHECK_CODE(UMO_ERR_PAIRING, PairingError);
UMO_CHECK_CODE(UMO_ERR_INCOMPATIBLE_HISTOGRAMS, IncompatibleHistograms);
UMO_CHECK_CODE(UMO_ERR_UNKNOWN_OPERATOR, UnknownOperator);
UMO_CHECK_CODE(UMO_ERR_INCOMPATIBLE_INDIVIDUALS, IncompatibleIndividuals);
UMO_CHECK_CODE(UMO_ERR_INVALID_DECISION_VECTOR, InvalidDecisionVector);
UMO_CHECK_CODE(UMO_ERR_UNKNOWN_PROBLEM, UnknownProblem);
UMO_CHECK_CODE(UMO_ERR_INDICATOR_DOMAIN, IndicatorDomainError);
UMO_CHECK_CODE(UMO_ERR_MISSING_BOUNDS, MissingBounds);
UMO_CHECK_CODE(UMO_ERR_EMPTY_REFERENCE, EmptyReference);
UMO_CHECK_CODE(UMO_ERR_NO_RUNS, NoRuns);
UMO_CHECK_CODE(UMO_ERR_INTERNAL, Internal);
#undef UMO_CHECK_CODE

template <typename Fn>
umo_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return UMO_OK;
  } catch (const umo::Error& e) {
    set_last_error(e.what());
    return static_cast<umo_status>(e.code());
  } catch (const std::exception& e) {
    set_last_error(e.what());
    return UMO_ERR_INTERNAL;
  } catch (...) {
    set_last_error("unknown failure");
    return UMO_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) umo::fail(umo::ErrorCode::InvalidArgument, what);
}

umo::OperatorConfig to_config(const umo_compare_options* options) {
  umo::OperatorConfig cfg;
  if (options) {
    cfg.gamma = options->gamma;
    cfg.omega = options->omega;
    cfg.quantile_steps = options->quantile_steps;
    cfg.mean_threshold = options->mean_threshold;
    cfg.spread_threshold = options->spread_threshold;
    cfg.sense =
        options->sense == UMO_MINIMIZE ? umo::Sense::Minimize : umo::Sense::Maximize;
  }
  return cfg;
}

std::vector<std::string> split_list(const char* csv) {
  std::vector<std::string> items;
  for (std::string_view token : umo::split(csv, ',')) {
    const std::string_view item = umo::trim(token);
    if (!item.empty()) items.emplace_back(item);
  }
  if (items.empty())
    umo::fail(umo::ErrorCode::Config, "expected a comma-separated list");
  return items;
}

std::vector<std::size_t> split_sizes(const char* csv) {
  std::vector<std::size_t> sizes;
  for (const std::string& item : split_list(csv)) {
    const std::int64_t n = umo::parse_int(item);
    if (n < 1) umo::fail(umo::ErrorCode::Config, "sample sizes must be >= 1");
    sizes.push_back(static_cast<std::size_t>(n));
  }
  return sizes;
}

}  // namespace

extern "C" {

const char* umo_status_name(umo_status status) {
  return umo::error_code_name(static_cast<umo::ErrorCode>(status));
}

const char* umo_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------- values */

umo_status umo_value_from_spec(const char* spec, umo_value** out) {
  return guarded([&] {
    require(spec && out, "spec and out must not be NULL");
    *out = new umo_value{umo::Comparand::closed_form(umo::parse_spec(spec))};
  });
}

umo_status umo_value_from_samples(const double* data, size_t count,
                                  umo_value** out) {
  return guarded([&] {
    require(data && out, "data and out must not be NULL");
    *out = new umo_value{
        umo::Comparand::from_raw(std::span<const double>(data, count))};
  });
}

umo_status umo_value_load(const char* path, umo_value** out) {
  return guarded([&] {
    require(path && out, "path and out must not be NULL");
    const std::vector<double> raw = umo::load_samples(path);
    *out = new umo_value{umo::Comparand::from_raw(raw)};
  });
}

void umo_value_free(umo_value* value) { delete value; }

umo_status umo_value_mean(const umo_value* value, double* out) {
  return guarded([&] {
    require(value && out, "value and out must not be NULL");
    *out = value->c.value.mean();
  });
}

umo_status umo_value_stats(const umo_value* value, double* mean,
                           double* variance) {
  return guarded([&] {
    require(value && mean && variance, "value, mean and variance must not be NULL");
    *mean = value->c.value.mean();
    *variance = value->c.value.variance();
  });
}

umo_status umo_value_bounds(const umo_value* value, double* lo, double* hi) {
  return guarded([&] {
    require(value && lo && hi, "value, lo and hi must not be NULL");
    const auto [a, b] = value->c.value.bounds();
    *lo = a;
    *hi = b;
  });
}

umo_status umo_value_cdf(const umo_value* value, double y, double* out) {
  return guarded([&] {
    require(value && out, "value and out must not be NULL");
    *out = value->c.value.is_empirical() ? umo::empirical_cdf(value->c.value, y)
                                         : value->c.value.spec().cdf(y);
  });
}

umo_status umo_value_quantile(const umo_value* value, double p, double* out) {
  return guarded([&] {
    require(value && out, "value and out must not be NULL");
    *out = value->c.value.is_empirical()
               ? umo::empirical_quantile(value->c.value, p)
               : value->c.value.spec().quantile(p);
  });
}

umo_status umo_value_save(const umo_value* value, const char* path) {
  return guarded([&] {
    require(value && path, "value and path must not be NULL");
    // Prefer draw order so a reload sees the same pairing.
    if (!value->c.raw.empty()) {
      umo::save_samples(path, value->c.raw);
    } else {
      umo::save_samples(path, value->c.value.samples());
    }
  });
}

/* --------------------------------------------------------- comparison */

void umo_compare_options_init(umo_compare_options* options) {
  if (!options) return;
  const umo::OperatorConfig defaults;
  options->gamma = defaults.gamma;
  options->omega = defaults.omega;
  options->quantile_steps = defaults.quantile_steps;
  options->mean_threshold = defaults.mean_threshold;
  options->spread_threshold = defaults.spread_threshold;
  options->sense = UMO_MINIMIZE;
}

umo_status umo_compare(const umo_value* a, const umo_value* b, const char* op,
                       const umo_compare_options* options, umo_report* out) {
  return guarded([&] {
    require(a && b && op && out, "a, b, op and out must not be NULL");
    const umo::ComparisonReport r =
        umo::compare(a->c, b->c, umo::parse_operator(op), to_config(options));
    out->p_greater = r.p_greater;
    out->p_less = r.p_less;
    out->decision = static_cast<int>(r.decision);
  });
}

const char* umo_decision_name(int decision) {
  return umo::decision_name(static_cast<umo::Decision>(decision));
}

umo_status umo_oracle(const char* spec_a, const char* spec_b,
                      long long resolution, double* out) {
  return guarded([&] {
    require(spec_a && spec_b && out, "spec_a, spec_b and out must not be NULL");
    *out = umo::oracle_dominance(umo::parse_spec(spec_a),
                                 umo::parse_spec(spec_b), resolution);
  });
}

/* ------------------------------------------------------------ drivers */

umo_status umo_error_sweep(const char* scenario_file, const char* ops_csv,
                           const char* sizes_csv, int repetitions,
                           double percentile, unsigned long long seed,
                           int closed_form,
                           const umo_compare_options* options,
                           const char* out_csv) {
  return guarded([&] {
    require(out_csv, "out_csv must not be NULL");
    std::vector<umo::Scenario> scenarios =
        scenario_file ? umo::load_scenarios(scenario_file)
                      : umo::builtin_scenarios();
    umo::SweepConfig cfg;
    if (ops_csv) cfg.operators = split_list(ops_csv);
    if (sizes_csv) cfg.sample_sizes = split_sizes(sizes_csv);
    cfg.repetitions = repetitions;
    cfg.percentile = percentile;
    cfg.seed = seed;
    cfg.closed_form = closed_form != 0;
    cfg.op_cfg = to_config(options);
    const std::vector<umo::SweepRow> rows =
        umo::run_error_sweep(std::move(scenarios), cfg);
    umo::write_sweep_csv(out_csv, rows, cfg.percentile);
  });
}

umo_status umo_timing(const char* ops_csv, const char* sizes_csv,
                      int min_invocations, unsigned long long seed,
                      const umo_compare_options* options, const char* out_csv,
                      const char* info_path) {
  return guarded([&] {
    require(out_csv, "out_csv must not be NULL");
    umo::TimingConfig cfg;
    if (ops_csv) cfg.operators = split_list(ops_csv);
    if (sizes_csv) cfg.sample_sizes = split_sizes(sizes_csv);
    cfg.min_invocations = min_invocations;
    cfg.seed = seed;
    cfg.op_cfg = to_config(options);
    const std::vector<umo::TimingRow> rows = umo::run_timing(cfg);
    umo::write_timing_csv(out_csv, rows);
    if (info_path) umo::write_timing_info(info_path);
  });
}

void umo_optimize_options_init(umo_optimize_options* options) {
  if (!options) return;
  const umo::OptimizeJob job;
  const umo::VariationConfig variation;
  options->problem = "udtlz2";
  options->n = job.options.n;
  options->m = job.options.m;
  options->noise = job.options.noise ? 1 : 0;
  options->stddev_noise = job.options.stddev_noise ? 1 : 0;
  options->population = job.optimizer.population;
  options->generations = job.optimizer.generations;
  options->samples = job.optimizer.samples;
  options->seed = job.optimizer.seed;
  options->op = "reduce";
  options->runs = job.runs;
  options->dci_divisions = job.dci_divisions;
  options->crossover_probability = variation.crossover_probability;
  options->crossover_index = variation.crossover_index;
  options->mutation_probability = variation.mutation_probability;
  options->mutation_index = variation.mutation_index;
}

umo_status umo_optimize(const umo_optimize_options* options,
                        const umo_compare_options* compare_options,
                        const char* out_dir) {
  return guarded([&] {
    require(options && out_dir, "options and out_dir must not be NULL");
    require(options->problem && options->op,
            "problem and op must not be NULL");
    umo::OptimizeJob job;
    job.problem = options->problem;
    job.options.n = options->n;
    job.options.m = options->m;
    job.options.noise = options->noise != 0;
    job.options.stddev_noise = options->stddev_noise != 0;
    job.optimizer.population = options->population;
    job.optimizer.generations = options->generations;
    job.optimizer.samples = options->samples;
    job.optimizer.seed = options->seed;
    job.optimizer.op = umo::parse_operator(options->op);
    job.optimizer.op_cfg = to_config(compare_options);
    job.optimizer.variation.crossover_probability =
        options->crossover_probability;
    job.optimizer.variation.crossover_index = options->crossover_index;
    job.optimizer.variation.mutation_probability =
        options->mutation_probability;
    job.optimizer.variation.mutation_index = options->mutation_index;
    job.runs = options->runs;
    job.dci_divisions = options->dci_divisions;
    job.out_dir = out_dir;
    umo::run_optimize_job(job);
  });
}

umo_status umo_metrics(const char* const* run_files, size_t run_count,
                       const char* reference_file, int divisions,
                       const char* out_csv) {
  return guarded([&] {
    require(run_files && reference_file && out_csv,
            "run_files, reference_file and out_csv must not be NULL");
    std::vector<std::string> files;
    files.reserve(run_count);
    for (size_t i = 0; i < run_count; ++i) {
      require(run_files[i], "run file entries must not be NULL");
      files.emplace_back(run_files[i]);
    }
    umo::metrics_from_files(files, reference_file, divisions, out_csv);
  });
}

}  // extern "C"
