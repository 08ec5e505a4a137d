#include "comparators.hpp"

#include <algorithm>
#include <cmath>

#include "special.hpp"
#include "text.hpp"

namespace umo {

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Better: return "better";
    case Decision::Worse: return "worse";
    case Decision::Indifferent: return "indifferent";
  }
  return "indifferent";
}

void OperatorConfig::validate() const {
  if (!(gamma >= 0.5 && gamma <= 1.0))
    fail(ErrorCode::Config, "gamma must lie in [0.5, 1]");
  if (!(omega > 0.0) || !std::isfinite(omega))
    fail(ErrorCode::Config, "omega must be positive");
  if (quantile_steps < 1)
    fail(ErrorCode::Config, "quantile_steps must be >= 1");
  if (!(mean_threshold >= 0.0) || !(spread_threshold >= 0.0))
    fail(ErrorCode::Config, "thresholds must be nonnegative");
}

OperatorId parse_operator(const std::string& id) {
  OperatorId op;
  if (id == "pw") op.kind = OperatorId::Kind::Pairwise;
  else if (id == "uni1") op.kind = OperatorId::Kind::UniformBounds;
  else if (id == "uni2") op.kind = OperatorId::Kind::UniformMoments;
  else if (id == "gauss") op.kind = OperatorId::Kind::Gauss;
  else if (id == "emp") op.kind = OperatorId::Kind::Empirical;
  else if (id == "reduce") op.kind = OperatorId::Kind::Reduced;
  else if (id == "mean") op.kind = OperatorId::Kind::Mean;
  else if (id == "threestage") op.kind = OperatorId::Kind::ThreeStage;
  else if (id == "hist" || id.rfind("hist:", 0) == 0) {
    op.kind = OperatorId::Kind::Histogram;
    if (id.size() > 5) {
      try {
        op.omega = parse_double(std::string_view(id).substr(5));
      } catch (const Error&) {
        fail(ErrorCode::UnknownOperator,
             "histogram bin width does not parse in '" + id + "'");
      }
      if (!(op.omega > 0.0))
        fail(ErrorCode::UnknownOperator, "histogram bin width must be positive in '" + id + "'");
    }
  } else {
    fail(ErrorCode::UnknownOperator, "unknown comparison operator '" + id + "'");
  }
  return op;
}

std::string operator_name(const OperatorId& op) {
  switch (op.kind) {
    case OperatorId::Kind::Pairwise: return "pw";
    case OperatorId::Kind::UniformBounds: return "uni1";
    case OperatorId::Kind::UniformMoments: return "uni2";
    case OperatorId::Kind::Gauss: return "gauss";
    case OperatorId::Kind::Histogram:
      return op.omega > 0.0 ? "hist:" + format_double(op.omega) : "hist";
    case OperatorId::Kind::Empirical: return "emp";
    case OperatorId::Kind::Reduced: return "reduce";
    case OperatorId::Kind::Mean: return "mean";
    case OperatorId::Kind::ThreeStage: return "threestage";
  }
  return "?";
}

bool is_probabilistic(const OperatorId& op) {
  return op.kind != OperatorId::Kind::Mean &&
         op.kind != OperatorId::Kind::ThreeStage;
}

Comparand Comparand::closed_form(DistributionSpec spec) {
  return Comparand{UncertainValue::closed_form(std::move(spec)), {}};
}

Comparand Comparand::from_raw(std::span<const double> raw) {
  Comparand c{UncertainValue::from_samples(raw),
              std::vector<double>(raw.begin(), raw.end())};
  return c;
}

Comparand Comparand::from_value(UncertainValue v) {
  return Comparand{std::move(v), {}};
}

// ---------------------------------------------------------------- histogram

double Histogram::mass_at(std::int64_t k) const {
  const std::int64_t i = k - first_bin;
  if (i < 0 || i >= static_cast<std::int64_t>(mass.size())) return 0.0;
  return mass[static_cast<std::size_t>(i)];
}

double Histogram::mass_below(std::int64_t k) const {
  const std::int64_t i = k - first_bin;
  if (i <= 0) return 0.0;
  if (i >= static_cast<std::int64_t>(below.size())) return total_mass();
  return below[static_cast<std::size_t>(i)];
}

double Histogram::total_mass() const {
  return below.empty() ? 0.0
                       : below.back() + mass.back();
}

namespace {

std::int64_t bin_index(double v, double omega) {
  return static_cast<std::int64_t>(std::floor(v / omega));
}

void finish_cumulative(Histogram& h) {
  h.below.resize(h.mass.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    h.below[i] = acc;
    acc += h.mass[i];
  }
}

Histogram histogram_from_sorted(std::span<const double> sorted, double omega) {
  Histogram h;
  h.omega = omega;
  h.first_bin = bin_index(sorted.front(), omega);
  const std::int64_t last = bin_index(sorted.back(), omega);
  h.mass.assign(static_cast<std::size_t>(last - h.first_bin + 1), 0.0);
  const double unit = 1.0 / static_cast<double>(sorted.size());
  for (double v : sorted)
    h.mass[static_cast<std::size_t>(bin_index(v, omega) - h.first_bin)] += unit;
  finish_cumulative(h);
  return h;
}

Histogram histogram_from_spec(const DistributionSpec& spec, double omega) {
  auto [lo, hi] = spec.support();  // UnboundedSupport for a Gaussian
  Histogram h;
  h.omega = omega;
  h.first_bin = static_cast<std::int64_t>(std::floor(lo / omega));
  std::int64_t last = static_cast<std::int64_t>(std::ceil(hi / omega)) - 1;
  if (last < h.first_bin) last = h.first_bin;
  h.mass.resize(static_cast<std::size_t>(last - h.first_bin + 1));
  for (std::size_t i = 0; i < h.mass.size(); ++i) {
    const double a = static_cast<double>(h.first_bin + static_cast<std::int64_t>(i)) * omega;
    h.mass[i] = spec.cdf(a + omega) - spec.cdf(a);
  }
  finish_cumulative(h);
  return h;
}

}  // namespace

Histogram build_histogram(const UncertainValue& value, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega))
    fail(ErrorCode::Config, "histogram bin width must be positive");
  if (value.is_empirical())
    return histogram_from_sorted(value.samples(), omega);
  return histogram_from_spec(value.spec(), omega);
}

double compare_histogram(const Histogram& a, const Histogram& b) {
  if (a.omega != b.omega)
    fail(ErrorCode::IncompatibleHistograms,
         "histograms use different bin widths (" + format_double(a.omega) +
             " vs " + format_double(b.omega) + ")");
  double p = 0.0;
  for (std::size_t i = 0; i < a.mass.size(); ++i) {
    const std::int64_t k = a.first_bin + static_cast<std::int64_t>(i);
    // Same bin: half the joint mass counts as greater. Lower bins of b:
    // everything counts.
    p += a.mass[i] * (0.5 * b.mass_at(k) + b.mass_below(k));
  }
  return p;
}

// ------------------------------------------------------------- estimators

double compare_pairwise(std::span<const double> a_raw,
                        std::span<const double> b_raw) {
  if (a_raw.empty() || a_raw.size() != b_raw.size())
    fail(ErrorCode::PairingError,
         "pairwise comparison needs two equally long, non-empty draw sequences");
  std::int64_t wins = 0;
  for (std::size_t i = 0; i < a_raw.size(); ++i)
    if (a_raw[i] > b_raw[i]) ++wins;
  return static_cast<double>(wins) / static_cast<double>(a_raw.size());
}

double uniform_overlap_probability(double la, double ua, double lb, double ub) {
  if (la > ua || lb > ub)
    fail(ErrorCode::InvalidArgument, "interval bounds out of order");
  const bool point_a = la == ua;
  const bool point_b = lb == ub;
  if (point_a && point_b) {
    if (la > lb) return 1.0;
    if (la < lb) return 0.0;
    return 0.5;  // coincident point masses split the tie
  }
  if (point_a) {
    // P(B < a) for a continuous B
    if (la <= lb) return 0.0;
    if (la >= ub) return 1.0;
    return (la - lb) / (ub - lb);
  }
  if (point_b) {
    if (ua <= lb) return 0.0;
    if (la >= lb) return 1.0;
    return (ua - lb) / (ua - la);
  }
  if (ua <= lb) return 0.0;
  if (ub <= la) return 1.0;
  // Split P(A > B) into the part with A inside B's range and the part with
  // A above it, integrating B's CDF against A's flat density.
  const double s = std::clamp(lb, la, ua);
  const double t = std::clamp(ub, la, ua);
  const double inside =
      ((t - lb) * (t - lb) - (s - lb) * (s - lb)) / (2.0 * (ub - lb));
  const double above = ua - t;
  return (inside + above) / (ua - la);
}

std::int64_t count_greater_pairs(std::span<const double> a_sorted,
                                 std::span<const double> b_sorted) {
  // Single merge pass: advance j past every b strictly below a_i, so j is
  // exactly the number of pairs a_i wins. Ties advance nothing.
  std::int64_t pairs = 0;
  std::size_t j = 0;
  const std::size_t m = b_sorted.size();
  for (double a : a_sorted) {
    while (j < m && a > b_sorted[j]) ++j;
    pairs += static_cast<std::int64_t>(j);
  }
  return pairs;
}

double compare_empirical_sorted(std::span<const double> a_sorted,
                                std::span<const double> b_sorted) {
  if (a_sorted.empty() || b_sorted.empty())
    fail(ErrorCode::InvalidPopulation, "empty sample population");
  return static_cast<double>(count_greater_pairs(a_sorted, b_sorted)) /
         (static_cast<double>(a_sorted.size()) *
          static_cast<double>(b_sorted.size()));
}

// ---------------------------------------------------------------- prepared

namespace {

void require_raw(const UncertainValue& value) {
  if (!value.is_empirical())
    fail(ErrorCode::WrongRepresentation,
         "this operator needs sample draws, not a closed-form distribution");
}

std::vector<double> operator_points(const UncertainValue& value, bool reduced,
                                    int quantile_steps) {
  if (value.is_empirical()) {
    if (reduced) return reduce(value.population()).values;
    return value.samples();
  }
  // A closed form contributes a fixed number of equiprobable quantile
  // points; they are already few, so the reduced variant keeps them as is.
  return equiprobable_points(value.spec(),
                             static_cast<std::size_t>(quantile_steps)).values;
}

}  // namespace

PreparedComparand prepare(const UncertainValue& value,
                          std::span<const double> raw, const OperatorId& op,
                          const OperatorConfig& cfg) {
  PreparedComparand p;
  p.op = op;
  if (p.op.kind == OperatorId::Kind::Histogram && p.op.omega <= 0.0)
    p.op.omega = cfg.omega;
  switch (op.kind) {
    case OperatorId::Kind::Pairwise:
      require_raw(value);
      if (raw.empty())
        fail(ErrorCode::PairingError,
             "pairwise comparison needs samples in original draw order");
      p.points.assign(raw.begin(), raw.end());
      break;
    case OperatorId::Kind::UniformBounds:
      std::tie(p.lo, p.hi) = value.bounds();
      p.has_bounds = true;
      break;
    case OperatorId::Kind::UniformMoments:
    case OperatorId::Kind::Gauss:
      p.mean = value.mean();
      p.variance = value.variance();
      p.has_moments = true;
      break;
    case OperatorId::Kind::Mean:
      p.mean = value.mean();
      p.has_moments = true;
      break;
    case OperatorId::Kind::Histogram:
      p.hist = build_histogram(value, p.op.omega);
      break;
    case OperatorId::Kind::Empirical:
      p.points = operator_points(value, false, cfg.quantile_steps);
      break;
    case OperatorId::Kind::Reduced:
      p.points = operator_points(value, true, cfg.quantile_steps);
      break;
    case OperatorId::Kind::ThreeStage: {
      require_raw(value);
      const auto& pop = value.population();
      std::tie(p.lo, p.hi) = value.bounds();
      p.has_bounds = true;
      p.mean = value.mean();
      p.has_moments = true;
      p.q_low = empirical_quantile(pop, 0.025);
      p.q_high = empirical_quantile(pop, 0.975);
      break;
    }
  }
  return p;
}

PreparedComparand prepare(const Comparand& c, const OperatorId& op,
                          const OperatorConfig& cfg) {
  return prepare(c.value, c.raw, op, cfg);
}

PreparedComparand prepare_from_raw(std::span<const double> raw,
                                   const OperatorId& op,
                                   const OperatorConfig& cfg) {
  if (raw.empty()) fail(ErrorCode::InvalidPopulation, "empty sample population");
  PreparedComparand p;
  p.op = op;
  if (p.op.kind == OperatorId::Kind::Histogram && p.op.omega <= 0.0)
    p.op.omega = cfg.omega;

  auto moments = [&](bool need_variance) {
    double sum = 0.0;
    for (double v : raw) sum += v;
    p.mean = sum / static_cast<double>(raw.size());
    if (need_variance) {
      if (raw.size() < 2)
        fail(ErrorCode::DegenerateVariance,
             "variance undefined for a single-sample population");
      double acc = 0.0;
      for (double v : raw) {
        const double d = v - p.mean;
        acc += d * d;
      }
      p.variance = acc / static_cast<double>(raw.size() - 1);
    }
    p.has_moments = true;
  };

  switch (op.kind) {
    case OperatorId::Kind::Pairwise:
      p.points.assign(raw.begin(), raw.end());
      break;
    case OperatorId::Kind::UniformBounds: {
      const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
      p.lo = *mn;
      p.hi = *mx;
      p.has_bounds = true;
      break;
    }
    case OperatorId::Kind::UniformMoments:
    case OperatorId::Kind::Gauss:
      moments(true);
      break;
    case OperatorId::Kind::Mean:
      moments(false);
      break;
    case OperatorId::Kind::Histogram: {
      // Two passes, no sort: locate the bin range, then count.
      const auto [mn, mx] = std::minmax_element(raw.begin(), raw.end());
      p.hist.omega = p.op.omega;
      p.hist.first_bin = bin_index(*mn, p.op.omega);
      const std::int64_t last = bin_index(*mx, p.op.omega);
      p.hist.mass.assign(static_cast<std::size_t>(last - p.hist.first_bin + 1), 0.0);
      const double unit = 1.0 / static_cast<double>(raw.size());
      for (double v : raw)
        p.hist.mass[static_cast<std::size_t>(bin_index(v, p.op.omega) -
                                             p.hist.first_bin)] += unit;
      finish_cumulative(p.hist);
      break;
    }
    case OperatorId::Kind::Empirical:
      p.points.assign(raw.begin(), raw.end());
      std::sort(p.points.begin(), p.points.end());
      break;
    case OperatorId::Kind::Reduced: {
      std::vector<double> sorted(raw.begin(), raw.end());
      std::sort(sorted.begin(), sorted.end());
      p.points = reduce(SamplePopulation::from_sorted(std::move(sorted))).values;
      break;
    }
    case OperatorId::Kind::ThreeStage: {
      std::vector<double> sorted(raw.begin(), raw.end());
      std::sort(sorted.begin(), sorted.end());
      auto pop = SamplePopulation::from_sorted(std::move(sorted));
      p.lo = pop.values.front();
      p.hi = pop.values.back();
      p.has_bounds = true;
      moments(false);
      p.q_low = empirical_quantile(pop, 0.025);
      p.q_high = empirical_quantile(pop, 0.975);
      break;
    }
  }
  return p;
}

namespace {

double gauss_probability(const PreparedComparand& a, const PreparedComparand& b) {
  const double var_sum = a.variance + b.variance;
  if (var_sum <= 0.0) {
    // Two point masses: fall back to a deterministic comparison.
    if (a.mean > b.mean) return 1.0;
    if (a.mean < b.mean) return 0.0;
    return 0.5;
  }
  const double z = (a.mean - b.mean) / std::sqrt(2.0 * var_sum);
  return 0.5 * (1.0 + erf_approx(z));
}

double moment_interval_probability(const PreparedComparand& a,
                                   const PreparedComparand& b) {
  const double ra = std::sqrt(3.0 * a.variance);
  const double rb = std::sqrt(3.0 * b.variance);
  return uniform_overlap_probability(a.mean - ra, a.mean + ra, b.mean - rb,
                                     b.mean + rb);
}

}  // namespace

double prepared_probability(const PreparedComparand& a,
                            const PreparedComparand& b) {
  switch (a.op.kind) {
    case OperatorId::Kind::Pairwise:
      return compare_pairwise(a.points, b.points);
    case OperatorId::Kind::UniformBounds:
      return uniform_overlap_probability(a.lo, a.hi, b.lo, b.hi);
    case OperatorId::Kind::UniformMoments:
      return moment_interval_probability(a, b);
    case OperatorId::Kind::Gauss:
      return gauss_probability(a, b);
    case OperatorId::Kind::Histogram:
      return compare_histogram(a.hist, b.hist);
    case OperatorId::Kind::Empirical:
    case OperatorId::Kind::Reduced:
      return compare_empirical_sorted(a.points, b.points);
    case OperatorId::Kind::Mean:
    case OperatorId::Kind::ThreeStage:
      break;
  }
  fail(ErrorCode::InvalidArgument,
       "operator '" + operator_name(a.op) + "' does not estimate probabilities");
}

Decision decide(double p_greater, double p_less, double gamma, Sense sense) {
  if (sense == Sense::Maximize) {
    if (p_greater > gamma) return Decision::Better;
    if (p_less > gamma) return Decision::Worse;
  } else {
    if (p_less > gamma) return Decision::Better;
    if (p_greater > gamma) return Decision::Worse;
  }
  return Decision::Indifferent;
}

namespace {

Decision better_on_side(bool a_is_smaller, Sense sense) {
  const bool smaller_wins = sense == Sense::Minimize;
  return a_is_smaller == smaller_wins ? Decision::Better : Decision::Worse;
}

Decision three_stage_decision(const PreparedComparand& a,
                              const PreparedComparand& b,
                              const OperatorConfig& cfg) {
  // Stage 1: disjoint sample domains decide outright.
  if (a.hi < b.lo) return better_on_side(true, cfg.sense);
  if (b.hi < a.lo) return better_on_side(false, cfg.sense);
  // Stage 2: mean gap, significant relative to the union of both domains.
  const double width = std::max(a.hi, b.hi) - std::min(a.lo, b.lo);
  if (std::fabs(a.mean - b.mean) > cfg.mean_threshold * width)
    return better_on_side(a.mean < b.mean, cfg.sense);
  // Stage 3: central 95% interval lengths; a clearly narrower spread wins
  // regardless of sense.
  const double len_a = a.q_high - a.q_low;
  const double len_b = b.q_high - b.q_low;
  if (std::fabs(len_a - len_b) > cfg.spread_threshold * std::max(len_a, len_b))
    return len_a < len_b ? Decision::Better : Decision::Worse;
  return Decision::Indifferent;
}

// Degenerate probability encoding for the decision-only baselines: Better
// means "on the winning side of the sense", so the greater/less fields are
// reconstructed from the decision and the sense.
ComparisonReport pseudo_report(Decision d, Sense sense) {
  ComparisonReport r;
  r.decision = d;
  if (d == Decision::Indifferent) {
    r.p_greater = 0.5;
    r.p_less = 0.5;
  } else {
    const bool a_greater = (d == Decision::Better) == (sense == Sense::Maximize);
    r.p_greater = a_greater ? 1.0 : 0.0;
    r.p_less = 1.0 - r.p_greater;
  }
  return r;
}

}  // namespace

ComparisonReport compare_prepared(const PreparedComparand& a,
                                  const PreparedComparand& b,
                                  const OperatorConfig& cfg) {
  switch (a.op.kind) {
    case OperatorId::Kind::Mean: {
      Decision d = Decision::Indifferent;
      if (a.mean != b.mean) d = better_on_side(a.mean < b.mean, cfg.sense);
      return pseudo_report(d, cfg.sense);
    }
    case OperatorId::Kind::ThreeStage:
      return pseudo_report(three_stage_decision(a, b, cfg), cfg.sense);
    default: {
      ComparisonReport r;
      r.p_greater = prepared_probability(a, b);
      r.p_less = prepared_probability(b, a);
      r.decision = decide(r.p_greater, r.p_less, cfg.gamma, cfg.sense);
      return r;
    }
  }
}

ComparisonReport compare(const Comparand& a, const Comparand& b,
                         const OperatorId& op, const OperatorConfig& cfg) {
  cfg.validate();
  const PreparedComparand pa = prepare(a, op, cfg);
  const PreparedComparand pb = prepare(b, op, cfg);
  return compare_prepared(pa, pb, cfg);
}

// ------------------------------------------------------------------ oracle

double oracle_dominance(const DistributionSpec& a, const DistributionSpec& b,
                        std::int64_t resolution) {
  if (resolution < 1)
    fail(ErrorCode::Config, "oracle resolution must be >= 1");
  a.validate();
  b.validate();
  const auto [lo, hi] = a.integration_range();
  const double h = (hi - lo) / static_cast<double>(resolution);
  double sum = 0.0;
  for (std::int64_t i = 0; i < resolution; ++i) {
    const double y = lo + (static_cast<double>(i) + 0.5) * h;
    sum += a.pdf(y) * b.cdf(y);
  }
  return sum * h;
}

}  // namespace umo
