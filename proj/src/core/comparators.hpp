#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uncertain.hpp"

namespace umo {

enum class Sense { Minimize, Maximize };

enum class Decision { Worse = -1, Indifferent = 0, Better = 1 };

const char* decision_name(Decision d);

/** Shared knobs for all comparison operators. */
struct OperatorConfig {
  double gamma = 0.5;            // decision threshold, in [0.5, 1]
  double omega = 0.1;            // histogram bin width
  int quantile_steps = 20;       // points used when a closed form feeds a
                                 // sample-based operator
  double mean_threshold = 0.1;   // three-stage: fraction of the bound union
  double spread_threshold = 0.3; // three-stage: fraction of the larger spread
  Sense sense = Sense::Minimize;

  void validate() const;
};

struct ComparisonReport {
  double p_greater = 0.0;  // P(A > B), strict
  double p_less = 0.0;     // P(B > A), from the swapped evaluation
  Decision decision = Decision::Indifferent;
};

/**
 * Operator selector. Text ids: pw, uni1, uni2, gauss, hist:<omega>, emp,
 * reduce, mean, threestage.
 */
struct OperatorId {
  enum class Kind {
    Pairwise,
    UniformBounds,    // uniform approximation from support bounds
    UniformMoments,   // uniform approximation from mean +- sqrt(3 var)
    Gauss,
    Histogram,
    Empirical,
    Reduced,
    Mean,
    ThreeStage,
  };

  Kind kind = Kind::Empirical;
  double omega = 0.0;  // histogram variants carry their bin width in the id
};

OperatorId parse_operator(const std::string& id);
std::string operator_name(const OperatorId& op);
// True for operators that estimate P(A > B); false for the decision-only
// baselines (mean, threestage).
bool is_probabilistic(const OperatorId& op);

/**
 * One side of a comparison: the canonical (sorted or closed-form) value plus,
 * when available, the samples in original draw order. The pairwise operator
 * is the only consumer of the draw order.
 */
struct Comparand {
  UncertainValue value;
  std::vector<double> raw;  // empty when draw order is unknown

  static Comparand closed_form(DistributionSpec spec);
  static Comparand from_raw(std::span<const double> raw);
  static Comparand from_value(UncertainValue v);
};

/** Origin-aligned histogram: bin k covers [k*omega, (k+1)*omega). */
struct Histogram {
  double omega = 0.0;
  std::int64_t first_bin = 0;
  std::vector<double> mass;   // mass[i] belongs to bin first_bin + i
  std::vector<double> below;  // below[i] = P(X < (first_bin + i) * omega)

  double mass_at(std::int64_t k) const;
  double mass_below(std::int64_t k) const;  // P(X < k * omega)
  double total_mass() const;
};

Histogram build_histogram(const UncertainValue& value, double omega);

// --- probability estimators (single direction, P(A > B) strict) ---------

// Index-paired fraction of draws with a_i > b_i. PairingError unless both
// sides have the same positive length.
double compare_pairwise(std::span<const double> a_raw, std::span<const double> b_raw);

// Exact P(A > B) for independent uniforms on [la, ua] and [lb, ub];
// zero-width inputs degrade to point masses (ties count 1/2).
double uniform_overlap_probability(double la, double ua, double lb, double ub);

// Merge scan over two ascending sample sets: number of strictly greater
// (a, b) pairs, and the derived probability. Ties contribute zero.
std::int64_t count_greater_pairs(std::span<const double> a_sorted,
                                 std::span<const double> b_sorted);
double compare_empirical_sorted(std::span<const double> a_sorted,
                                std::span<const double> b_sorted);

double compare_histogram(const Histogram& a, const Histogram& b);

// --- full reports --------------------------------------------------------

Decision decide(double p_greater, double p_less, double gamma, Sense sense);

// Evaluates the operator in both directions and applies the threshold rule.
// The decision-only baselines fill the probability fields with a degenerate
// 1/0 (or 0.5/0.5) encoding of their verdict.
ComparisonReport compare(const Comparand& a, const Comparand& b,
                         const OperatorId& op, const OperatorConfig& cfg);

// --- prepared form -------------------------------------------------------

// Per-value operator state, built once and reused across comparisons: the
// optimizer prepares each individual's objectives a single time per
// evaluation, and the timing harness measures this step as "init".
struct PreparedComparand {
  OperatorId op;
  bool has_moments = false;
  bool has_bounds = false;
  double mean = 0.0;
  double variance = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double q_low = 0.0;   // three-stage 2.5% quantile
  double q_high = 0.0;  // three-stage 97.5% quantile
  std::vector<double> points;  // sorted samples, quantile points, or raw draws
  Histogram hist;
};

PreparedComparand prepare(const UncertainValue& value,
                          std::span<const double> raw, const OperatorId& op,
                          const OperatorConfig& cfg);
PreparedComparand prepare(const Comparand& c, const OperatorId& op,
                          const OperatorConfig& cfg);
// Same, but starting from draws in original order (sorts only when the
// operator needs order); this is the initialization the timing harness runs.
PreparedComparand prepare_from_raw(std::span<const double> raw,
                                   const OperatorId& op,
                                   const OperatorConfig& cfg);

// P(A > B) for a prepared pair (probabilistic operators only).
double prepared_probability(const PreparedComparand& a, const PreparedComparand& b);
ComparisonReport compare_prepared(const PreparedComparand& a,
                                  const PreparedComparand& b,
                                  const OperatorConfig& cfg);

// --- ground truth --------------------------------------------------------

// Midpoint-rule evaluation of P(A > B) = integral pdf_A(y) * P(B < y) dy
// over A's integration range at the given resolution. Serves as the ground
// truth the estimators are judged against; at the default resolution the
// absolute error is below 1e-4 for the families involved here (far below
// that away from the Beta density spikes).
double oracle_dominance(const DistributionSpec& a, const DistributionSpec& b,
                        std::int64_t resolution = 1000000);

}  // namespace umo
