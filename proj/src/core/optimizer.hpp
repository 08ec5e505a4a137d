#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "benchmarks.hpp"
#include "dominance.hpp"

namespace umo {

struct VariationConfig {
  double crossover_probability = 0.9;
  double crossover_index = 15.0;
  double mutation_probability = -1.0;  // < 0 resolves to 1/n at run time
  double mutation_index = 20.0;
};

struct OptimizerConfig {
  int population = 25;    // >= 2; odd sizes drop the last pair's second child
  int generations = 400;  // >= 1
  int samples = 100;      // objective draws per individual, >= 1
  std::uint64_t seed = 1;
  OperatorId op;
  OperatorConfig op_cfg;
  VariationConfig variation;

  void validate() const;
};

struct SnapshotEntry {
  std::vector<double> x;
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
  int rank = 0;
  double crowding = 0.0;
};

struct Snapshot {
  int gen = 0;
  std::vector<SnapshotEntry> entries;
};

struct RunRecord {
  std::string problem;
  int n = 0;
  int m = 0;
  int population = 0;
  int generations = 0;
  int samples = 0;
  std::string op;
  double gamma = 0.5;
  std::uint64_t seed = 0;
  std::vector<Snapshot> snapshots;  // one per generation, 1..G

  // Not serialized: bookkeeping for budget and timing checks.
  std::vector<double> gen_seconds;
  std::int64_t evaluations = 0;
};

/**
 * Peel the population into fronts with the configured dominance relation:
 * front 0 holds everything dominated by nobody, later fronts repeat the
 * filter on the rest. No transitivity is assumed; should a peel come up
 * empty while individuals remain (possible near the decision threshold),
 * the whole remainder becomes one front. Ranks and per-front crowding are
 * written back into the individuals; fronts list indices into `pop`.
 */
std::vector<std::vector<std::size_t>> rank_population(
    std::vector<Individual>& pop, const OperatorId& op,
    const OperatorConfig& cfg);

/**
 * Crowding of one front over mean objectives: boundary individuals get
 * +infinity, interior ones the usual normalized neighbour-gap sum, and an
 * objective with zero range across the front contributes nothing.
 */
void assign_crowding(const std::vector<std::vector<double>>& means,
                     std::span<const std::size_t> front,
                     std::span<double> crowding_out);

// Index of the winner of a binary tournament: lower rank, then larger
// crowding, then the first of the two draws.
std::size_t binary_tournament(const std::vector<Individual>& pop,
                              RandomStream& rs);

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    std::span<const double> a, std::span<const double> b, RandomStream& rs,
    const VariationConfig& vc);

// vc.mutation_probability must be resolved (>= 0) by the caller.
std::vector<double> polynomial_mutation(std::span<const double> x,
                                        RandomStream& rs,
                                        const VariationConfig& vc);

RunRecord run_nsga2(const UncertainProblem& problem,
                    const OptimizerConfig& cfg);

void write_run_csv(const std::string& path, const RunRecord& rec);
RunRecord read_run_csv(const std::string& path);

}  // namespace umo
