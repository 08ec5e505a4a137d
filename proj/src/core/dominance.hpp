#pragma once

#include <vector>

#include "comparators.hpp"

namespace umo {

/**
 * One candidate solution: a decision vector plus one uncertain value per
 * objective. `raw` keeps the evaluation draws in their original order (one
 * column per objective) for the index-paired operator; it may be left empty
 * otherwise. `rank` and `crowding` are filled in by the optimizer.
 */
struct Individual {
  std::vector<double> x;
  std::vector<UncertainValue> objectives;
  std::vector<std::vector<double>> raw;
  int rank = 0;
  double crowding = 0.0;
};

std::vector<double> mean_objectives(const Individual& ind);

// One prepared comparand per objective, for repeated pairwise checks.
std::vector<PreparedComparand> prepare_objectives(const Individual& ind,
                                                  const OperatorId& op,
                                                  const OperatorConfig& cfg);

// Pareto dominance over prepared objective states: never worse anywhere,
// strictly better somewhere. The configured sense applies to every objective.
bool dominates_prepared(std::span<const PreparedComparand> a,
                        std::span<const PreparedComparand> b,
                        const OperatorConfig& cfg);

bool dominates(const Individual& a, const Individual& b, const OperatorId& op,
               const OperatorConfig& cfg);

/**
 * P(A dominates B) assuming the objectives are statistically independent:
 * the product over objectives of the probability that A comes out on the
 * favourable side. The caller is responsible for the independence claim.
 */
double dominance_probability_independent(const Individual& a,
                                         const Individual& b,
                                         const OperatorId& op,
                                         const OperatorConfig& cfg);

// All individuals not dominated by any other, in their original order.
std::vector<Individual> non_dominated_filter(const std::vector<Individual>& pop,
                                             const OperatorId& op,
                                             const OperatorConfig& cfg);

}  // namespace umo
