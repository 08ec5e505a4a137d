#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace umo {

enum class Family { Uniform, Gaussian, Beta };

/**
 * Parametric description of a random quantity, optionally pushed through an
 * affine map y = scale * z + offset (scale may be negative, never zero).
 *
 * Parameter slots by family:
 *   Uniform  p1 = lower, p2 = upper      (p1 < p2)
 *   Gaussian p1 = mean,  p2 = variance   (p2 > 0)
 *   Beta     p1 = alpha, p2 = beta       (both > 0), base support [0, 1]
 */
struct DistributionSpec {
  Family family = Family::Uniform;
  double p1 = 0.0;
  double p2 = 1.0;
  double scale = 1.0;
  double offset = 0.0;

  static DistributionSpec uniform(double lower, double upper);
  static DistributionSpec gaussian(double mean, double variance);
  static DistributionSpec beta(double alpha, double beta);
  DistributionSpec transformed(double scale, double offset) const;

  void validate() const;

  double mean() const;
  double variance() const;

  bool bounded() const { return family != Family::Gaussian; }
  // Support endpoints, ascending. Throws UnboundedSupport for Gaussian.
  std::pair<double, double> support() const;
  // Support, with Gaussian tails cut at mean +- 10 sigma (tail mass ~1e-23);
  // this is the integration window the numeric dominance oracle uses.
  std::pair<double, double> integration_range() const;

  double pdf(double y) const;
  double cdf(double y) const;
  double quantile(double p) const;  // p in [0, 1] at the ends where finite
  double sample(RandomStream& rs) const;
};

// Text form: family(p1,p2) with optional *scale+offset suffix, e.g.
// "uniform(0,1)", "gaussian(0,0.25)", "beta(2,5)*0.1+0.9".
DistributionSpec parse_spec(const std::string& text);
std::string format_spec(const DistributionSpec& spec);

/** Ascending, finite, non-empty set of samples. */
struct SamplePopulation {
  std::vector<double> values;

  static SamplePopulation from_raw(std::span<const double> raw);  // sorts
  static SamplePopulation from_sorted(std::vector<double> sorted);

  std::size_t size() const { return values.size(); }
};

struct SummaryStats {
  double mean = 0.0;
  double variance = 0.0;
  double stddev = 0.0;
};

/**
 * One uncertain objective value: either a closed-form distribution or an
 * empirical sample population. Immutable after construction; summary
 * statistics are computed at construction time, so concurrent readers are
 * safe and repeated queries return identical bits.
 */
class UncertainValue {
 public:
  static UncertainValue closed_form(DistributionSpec spec);
  static UncertainValue from_samples(std::span<const double> raw);
  static UncertainValue from_population(SamplePopulation pop);

  bool is_empirical() const {
    return std::holds_alternative<SamplePopulation>(body_);
  }

  const DistributionSpec& spec() const;          // WrongRepresentation if empirical
  const SamplePopulation& population() const;    // WrongRepresentation if closed form
  const std::vector<double>& samples() const { return population().values; }
  std::size_t sample_count() const { return population().size(); }

  double mean() const { return mean_; }
  double variance() const;  // DegenerateVariance for a single sample
  double stddev() const;
  bool has_variance() const { return has_variance_; }

  // Empirical: (smallest, largest) sample. Closed form: support endpoints;
  // UnboundedSupport for a Gaussian spec.
  std::pair<double, double> bounds() const;

 private:
  std::variant<DistributionSpec, SamplePopulation> body_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  bool has_variance_ = false;
};

SummaryStats summary(const UncertainValue& value);

// Fraction of samples <= y. Empirical values only.
double empirical_cdf(const UncertainValue& value, double y);
double empirical_cdf(const SamplePopulation& pop, double y);

// First sample after the floor(p*N) smallest ones (p in [0,1); p = 0 gives
// the minimum). Empirical values only.
double empirical_quantile(const UncertainValue& value, double p);
double empirical_quantile(const SamplePopulation& pop, double p);

// n points hitting the quantile levels (2i-1)/(2n), i = 1..n; the empirical
// CDF of the result stays within 1/(2n) of the spec's CDF in sup norm.
SamplePopulation equiprobable_points(const DistributionSpec& spec, std::size_t n);

// Quantile-preserving reduction to ceil(sqrt(N)) points: member i (1-based)
// is the sample with 1-based index ceil((i - 1/2) * N / N').
SamplePopulation reduce(const SamplePopulation& pop);

// Sample-file serialization: one value per line, optional "# n=<count>"
// header. Loading preserves file order (callers that need draw order keep
// the returned vector around before sorting it into a value).
std::vector<double> load_samples(const std::string& path);
void save_samples(const std::string& path, std::span<const double> values);

}  // namespace umo
