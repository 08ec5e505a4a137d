#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string_view>

#include "text.hpp"

namespace umo {

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> set;
  set.push_back({"gauss-vs-beta", DistributionSpec::gaussian(0.6, 0.04),
                 DistributionSpec::beta(2.0, 5.0)});
  set.push_back({"uni-vs-uni", DistributionSpec::uniform(0.1, 1.1),
                 DistributionSpec::uniform(0.0, 1.0)});
  set.push_back({"gauss-vs-gauss", DistributionSpec::gaussian(0.55, 0.0225),
                 DistributionSpec::gaussian(0.5, 0.0225)});
  set.push_back({"beta-vs-uniform", DistributionSpec::beta(1.0, 9.0),
                 DistributionSpec::uniform(0.0, 0.15)});
  set.push_back({"narrow-overlap",
                 DistributionSpec::beta(2.0, 3.0).transformed(0.04, 0.55),
                 DistributionSpec::beta(3.0, 2.0).transformed(0.04, 0.515)});
  return set;
}

namespace {

std::vector<std::string_view> whitespace_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

std::vector<Scenario> load_scenarios(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
  std::vector<Scenario> set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto tokens = whitespace_tokens(sv);
    if (tokens.size() != 3)
      fail(ErrorCode::Parse, "scenario line " + std::to_string(line_no) +
                                 " needs `name spec_a spec_b`");
    Scenario s;
    s.name = std::string(tokens[0]);
    s.a = parse_spec(std::string(tokens[1]));
    s.b = parse_spec(std::string(tokens[2]));
    set.push_back(std::move(s));
  }
  if (set.empty())
    fail(ErrorCode::Parse, "scenario file '" + path + "' holds no scenarios");
  return set;
}

void annotate_oracle(std::vector<Scenario>& scenarios, std::int64_t resolution) {
  for (Scenario& s : scenarios) {
    const double p = oracle_dominance(s.a, s.b, resolution);
    s.oracle = std::clamp(p, 0.0, 1.0);
    s.has_oracle = true;
  }
}

// ------------------------------------------------------------- error sweep

std::vector<SweepRow> run_error_sweep(std::vector<Scenario> scenarios,
                                      const SweepConfig& cfg) {
  if (scenarios.empty())
    fail(ErrorCode::Config, "error sweep needs at least one scenario");
  if (cfg.repetitions < 1)
    fail(ErrorCode::Config, "repetitions must be at least 1");
  if (!(cfg.percentile > 0.0 && cfg.percentile < 1.0))
    fail(ErrorCode::Config, "percentile must lie inside (0, 1)");
  if (cfg.operators.empty())
    fail(ErrorCode::Config, "error sweep needs at least one operator");
  if (cfg.sample_sizes.empty())
    fail(ErrorCode::Config, "error sweep needs at least one sample size");
  cfg.op_cfg.validate();

  std::vector<OperatorId> ops;
  ops.reserve(cfg.operators.size());
  for (const auto& name : cfg.operators) {
    ops.push_back(parse_operator(name));
    if (!is_probabilistic(ops.back()))
      fail(ErrorCode::Config,
           "operator '" + name + "' yields no probability to measure");
  }
  for (std::size_t n : cfg.sample_sizes)
    if (n < 1) fail(ErrorCode::Config, "sample sizes must be at least 1");

  for (Scenario& s : scenarios)
    if (!s.has_oracle) {
      s.oracle = std::clamp(
          oracle_dominance(s.a, s.b, cfg.oracle_resolution), 0.0, 1.0);
      s.has_oracle = true;
    }

  std::vector<SweepRow> rows;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const Scenario& sc = scenarios[si];
    std::vector<std::vector<std::vector<double>>> errs(
        ops.size(),
        std::vector<std::vector<double>>(cfg.sample_sizes.size()));
    for (std::size_t ni = 0; ni < cfg.sample_sizes.size(); ++ni) {
      const std::size_t n = cfg.sample_sizes[ni];
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        auto estimate = [&](const Comparand& ca, const Comparand& cb) {
          for (std::size_t oi = 0; oi < ops.size(); ++oi) {
            const double p = compare(ca, cb, ops[oi], cfg.op_cfg).p_greater;
            errs[oi][ni].push_back(std::fabs(p - sc.oracle));
          }
        };
        if (cfg.closed_form) {
          estimate(Comparand::closed_form(sc.a), Comparand::closed_form(sc.b));
        } else {
          // One shared draw set per repetition, so every operator sees the
          // same evidence.
          RandomStream rs(RandomStream::mix(
              RandomStream::mix(RandomStream::mix(cfg.seed, si), ni),
              static_cast<std::uint64_t>(rep)));
          std::vector<double> ra(n);
          std::vector<double> rb(n);
          for (double& v : ra) v = sc.a.sample(rs);
          for (double& v : rb) v = sc.b.sample(rs);
          estimate(Comparand::from_raw(ra), Comparand::from_raw(rb));
        }
      }
    }
    for (std::size_t oi = 0; oi < ops.size(); ++oi)
      for (std::size_t ni = 0; ni < cfg.sample_sizes.size(); ++ni) {
        SweepRow row;
        row.scenario = sc.name;
        row.op = cfg.operators[oi];
        row.n = cfg.sample_sizes[ni];
        row.err = empirical_quantile(
            SamplePopulation::from_raw(errs[oi][ni]), cfg.percentile);
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

namespace {

std::string percentile_tag(double percentile) {
  // 0.99 -> "99", 0.975 -> "97.5"; one decimal is plenty for a column name
  return format_double(std::round(percentile * 1000.0) / 10.0);
}

}  // namespace

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows, double percentile) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "scenario,op,N,err_p" << percentile_tag(percentile) << "\n";
  for (const SweepRow& row : rows)
    out << row.scenario << ',' << row.op << ',' << row.n << ','
        << format_double(row.err) << "\n";
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

// ------------------------------------------------------------------ timing

namespace {

volatile double g_time_sink = 0.0;

template <typename Fn>
double median_call_us(Fn&& fn, int min_invocations) {
  using clock = std::chrono::steady_clock;
  for (int i = 0; i < 3; ++i) fn();
  // Grow the batch until one batch is comfortably above timer granularity.
  int k = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (int i = 0; i < k; ++i) fn();
    const double us =
        std::chrono::duration<double, std::micro>(clock::now() - t0).count();
    if (us >= 20.0 || k >= (1 << 22)) break;
    k *= 2;
  }
  int batches = (min_invocations + k - 1) / k;
  if (batches < 9) batches = 9;
  std::vector<double> per_call;
  per_call.reserve(static_cast<std::size_t>(batches));
  for (int b = 0; b < batches; ++b) {
    const auto t0 = clock::now();
    for (int i = 0; i < k; ++i) fn();
    per_call.push_back(
        std::chrono::duration<double, std::micro>(clock::now() - t0).count() /
        k);
  }
  return lower_median(std::move(per_call));
}

}  // namespace

std::vector<TimingRow> run_timing(const TimingConfig& cfg) {
  if (cfg.operators.empty() || cfg.sample_sizes.empty())
    fail(ErrorCode::Config, "timing needs operators and sample sizes");
  if (cfg.min_invocations < 1)
    fail(ErrorCode::Config, "timing needs at least one invocation");
  cfg.op_cfg.validate();

  std::vector<TimingRow> rows;
  for (std::size_t oi = 0; oi < cfg.operators.size(); ++oi) {
    const OperatorId op = parse_operator(cfg.operators[oi]);
    for (std::size_t n : cfg.sample_sizes) {
      if (n < 1) fail(ErrorCode::Config, "sample sizes must be at least 1");
      RandomStream rs(RandomStream::mix(cfg.seed, (oi << 20) ^ n));
      std::vector<double> ra(n);
      std::vector<double> rb(n);
      for (double& v : ra) v = rs.gaussian(0.5, 0.01);
      for (double& v : rb) v = rs.gaussian(0.52, 0.01);

      TimingRow row;
      row.op = cfg.operators[oi];
      row.n = n;
      row.init_us = median_call_us(
          [&] {
            const PreparedComparand p = prepare_from_raw(ra, op, cfg.op_cfg);
            g_time_sink = g_time_sink + p.mean + p.lo +
                          static_cast<double>(p.points.size()) +
                          static_cast<double>(p.hist.mass.size());
          },
          cfg.min_invocations);

      const PreparedComparand pa = prepare_from_raw(ra, op, cfg.op_cfg);
      const PreparedComparand pb = prepare_from_raw(rb, op, cfg.op_cfg);
      row.cmp_us = median_call_us(
          [&] {
            const ComparisonReport r = compare_prepared(pa, pb, cfg.op_cfg);
            g_time_sink = g_time_sink + r.p_greater +
                          static_cast<double>(static_cast<int>(r.decision));
          },
          cfg.min_invocations);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_timing_csv(const std::string& path,
                      const std::vector<TimingRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "op,N,init_us,cmp_us\n";
  for (const TimingRow& row : rows)
    out << row.op << ',' << row.n << ',' << format_double(row.init_us) << ','
        << format_double(row.cmp_us) << "\n";
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

void write_timing_info(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "compiler=" << __VERSION__ << "\n";
  out << "pointer_bits=" << 8 * sizeof(void*) << "\n";
  out << "clock_period=" << std::chrono::steady_clock::period::num << "/"
      << std::chrono::steady_clock::period::den << " s\n";
  out << "note=absolute microseconds are machine-specific; only scaling "
         "across N is meaningful\n";
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

// ----------------------------------------------------------- metric tables

MetricsTable compute_metrics(const std::vector<RunRecord>& runs,
                             const std::vector<FrontPoint>& reference,
                             int divisions) {
  if (runs.empty()) fail(ErrorCode::NoRuns, "no runs to score");
  if (reference.empty())
    fail(ErrorCode::EmptyReference, "reference front is empty");
  if (divisions < 1)
    fail(ErrorCode::Config, "grid divisions must be at least 1");
  const std::size_t gens = runs.front().snapshots.size();
  if (gens == 0) fail(ErrorCode::Parse, "run holds no generations");
  for (const RunRecord& rec : runs)
    if (rec.snapshots.size() != gens)
      fail(ErrorCode::Parse, "runs disagree on generation count");

  MetricsTable table;
  table.gens.reserve(gens);
  for (const Snapshot& s : runs.front().snapshots) table.gens.push_back(s.gen);

  std::vector<std::vector<std::vector<FrontPoint>>> fronts(runs.size());
  bool positive = true;
  for (const FrontPoint& p : reference)
    for (double v : p.f) positive = positive && v > 0.0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    fronts[r].reserve(gens);
    for (std::size_t g = 0; g < gens; ++g) {
      fronts[r].push_back(snapshot_front(runs[r].snapshots[g]));
      for (const FrontPoint& p : fronts[r].back())
        for (double v : p.f) positive = positive && v > 0.0;
    }
  }
  // One epsilon flavour for the whole table: the scaled form whenever the
  // domain allows it, the shifted form otherwise.
  table.additive = !positive;

  table.eps.assign(runs.size(), {});
  table.dci_score.assign(runs.size(), {});
  table.diag.assign(runs.size(), {});
  for (std::size_t r = 0; r < runs.size(); ++r) {
    table.eps[r].reserve(gens);
    table.dci_score[r].reserve(gens);
    table.diag[r].reserve(gens);
    for (std::size_t g = 0; g < gens; ++g) {
      const auto& front = fronts[r][g];
      table.eps[r].push_back(table.additive
                                 ? epsilon_additive(front, reference)
                                 : epsilon_multiplicative(front, reference));
      table.dci_score[r].push_back(dci(front, reference, divisions));
      table.diag[r].push_back(diagonal_distance(front));
    }
  }
  return table;
}

void write_run_metrics_csv(const std::string& path, const MetricsTable& table,
                           std::size_t run) {
  if (run >= table.eps.size())
    fail(ErrorCode::InvalidArgument, "run index out of range");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "gen," << (table.additive ? "eps_add" : "eps") << ",dci,diag\n";
  for (std::size_t g = 0; g < table.gens.size(); ++g)
    out << table.gens[g] << ',' << format_double(table.eps[run][g]) << ','
        << format_double(table.dci_score[run][g]) << ','
        << format_double(table.diag[run][g]) << "\n";
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

void write_median_metrics_csv(const std::string& path,
                              const MetricsTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "gen," << (table.additive ? "eps_add_med" : "eps_med")
      << ",dci_med,diag_med\n";
  for (std::size_t g = 0; g < table.gens.size(); ++g) {
    std::vector<double> eps_col;
    std::vector<double> dci_col;
    std::vector<double> diag_col;
    for (std::size_t r = 0; r < table.eps.size(); ++r) {
      eps_col.push_back(table.eps[r][g]);
      dci_col.push_back(table.dci_score[r][g]);
      diag_col.push_back(table.diag[r][g]);
    }
    out << table.gens[g] << ',' << format_double(lower_median(std::move(eps_col)))
        << ',' << format_double(lower_median(std::move(dci_col))) << ','
        << format_double(lower_median(std::move(diag_col))) << "\n";
  }
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

MetricsTable metrics_from_files(const std::vector<std::string>& run_files,
                                const std::string& reference_file,
                                int divisions, const std::string& out_path) {
  if (run_files.empty()) fail(ErrorCode::NoRuns, "no run files given");
  std::vector<RunRecord> runs;
  runs.reserve(run_files.size());
  for (const auto& file : run_files) runs.push_back(read_run_csv(file));
  const auto reference = read_front_csv(reference_file);
  MetricsTable table = compute_metrics(runs, reference, divisions);
  write_median_metrics_csv(out_path, table);
  return table;
}

// ---------------------------------------------------------- optimize runs

namespace {

std::string run_tag(std::size_t r) {
  return r < 10 ? "0" + std::to_string(r) : std::to_string(r);
}

}  // namespace

OptimizeOutcome run_optimize_job(const OptimizeJob& job) {
  if (job.runs < 1) fail(ErrorCode::Config, "need at least one run");
  if (job.dci_divisions < 1)
    fail(ErrorCode::Config, "grid divisions must be at least 1");
  const UncertainProblem problem = registry_lookup(job.problem, job.options);
  job.optimizer.validate();

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(job.out_dir, ec);
  if (ec)
    fail(ErrorCode::Io, "cannot create output directory '" + job.out_dir + "'");

  OptimizeOutcome out;
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(job.runs));
  for (int r = 0; r < job.runs; ++r) {
    OptimizerConfig cfg = job.optimizer;
    cfg.seed = job.optimizer.seed + static_cast<std::uint64_t>(r);
    records.push_back(run_nsga2(problem, cfg));
    const std::string path =
        (fs::path(job.out_dir) / ("run_" + run_tag(static_cast<std::size_t>(r)) + ".csv"))
            .string();
    write_run_csv(path, records.back());
    out.run_files.push_back(path);
  }

  std::vector<std::vector<FrontPoint>> finals;
  finals.reserve(records.size());
  for (const RunRecord& rec : records)
    finals.push_back(snapshot_front(rec.snapshots.back()));
  const auto reference = build_reference_front(finals);
  out.reference_file = (fs::path(job.out_dir) / "reference.csv").string();
  write_front_csv(out.reference_file, reference);

  const MetricsTable table = compute_metrics(records, reference, job.dci_divisions);
  out.additive_eps = table.additive;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const std::string path =
        (fs::path(job.out_dir) / ("metrics_" + run_tag(r) + ".csv")).string();
    write_run_metrics_csv(path, table, r);
    out.metric_files.push_back(path);
  }
  out.metrics_file = (fs::path(job.out_dir) / "metrics.csv").string();
  write_median_metrics_csv(out.metrics_file, table);

  std::vector<double> final_eps;
  final_eps.reserve(table.eps.size());
  for (const auto& trace : table.eps) final_eps.push_back(trace.back());
  out.median_run = median_run_index(final_eps);
  out.median_file = (fs::path(job.out_dir) / "median_run.csv").string();
  std::ofstream med(out.median_file, std::ios::binary);
  if (!med)
    fail(ErrorCode::Io, "cannot open '" + out.median_file + "' for writing");
  med << "run,file," << (table.additive ? "eps_add" : "eps") << "\n";
  med << out.median_run << ",run_" << run_tag(out.median_run) << ".csv,"
      << format_double(final_eps[out.median_run]) << "\n";
  if (!med) fail(ErrorCode::Io, "write to '" + out.median_file + "' failed");
  return out;
}

}  // namespace umo
