#pragma once

#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "uncertain.hpp"

namespace umo {

/**
 * Registry overrides. `noise` switches every stochastic ingredient of a
 * problem off at once, leaving the deterministic skeleton (exact trig, no
 * perturbation, no additive noise); that is the hook the oracle tests use.
 * `stddev_noise` reads the second parameter of the udtlz6 perturbation as a
 * standard deviation instead of a variance.
 */
struct ProblemOptions {
  int n = 7;
  int m = 3;
  bool noise = true;
  bool stddev_noise = false;
};

struct UncertainProblem {
  std::string name;
  int variant = 0;  // 1..6
  int n = 7;
  int m = 3;
  bool noise = true;
  bool stddev_noise = false;
};

// Maclaurin prefix sums: sin with `terms` odd-power terms, cos with `terms`
// even-power terms, both starting at the constant/linear term.
double truncated_sin(double theta, int terms);
double truncated_cos(double theta, int terms);

/**
 * One stochastic draw of all m objectives at x. Draw order per evaluation is
 * fixed: udtlz1 takes one beta draw per variable; udtlz2..5 take one additive
 * noise draw, then one series-length draw; udtlz6 takes one gaussian draw per
 * variable. With noise off the stream is not touched.
 */
std::vector<double> evaluate_once(const UncertainProblem& problem,
                                  std::span<const double> x, RandomStream& rs);

struct EvaluationResult {
  std::vector<std::vector<double>> raw;       // [m][count], draw order
  std::vector<SamplePopulation> populations;  // sorted per objective
};

EvaluationResult evaluate_population(const UncertainProblem& problem,
                                     std::span<const double> x,
                                     std::size_t count, RandomStream& rs);

UncertainProblem registry_lookup(const std::string& name,
                                 const ProblemOptions& opt = {});
const std::vector<std::string>& registry_names();

}  // namespace umo
