#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "core/optimizer.hpp"
#include "doctest.h"

using namespace umo;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

Individual sampled(std::vector<double> die) {
  Individual ind;
  ind.objectives.push_back(UncertainValue::from_samples(die));
  ind.raw.push_back(std::move(die));
  return ind;
}

OptimizerConfig small_config() {
  OptimizerConfig cfg;
  cfg.population = 8;
  cfg.generations = 3;
  cfg.samples = 20;
  cfg.seed = 7;
  cfg.op = parse_operator("reduce");
  cfg.op_cfg.gamma = 0.7;
  return cfg;
}

UncertainProblem small_problem() {
  ProblemOptions opts;
  return registry_lookup("udtlz2", opts);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE_BEGIN("optimizer");

TEST_CASE("config validation accepts odd populations, rejects tiny ones") {
  OptimizerConfig cfg = small_config();
  cfg.population = 7;
  CHECK_NOTHROW(cfg.validate());
  cfg.population = 1;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::Config);
  cfg.population = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::Config);
  cfg = small_config();
  cfg.variation.crossover_probability = 1.5;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::Config);
}

TEST_CASE("crowding: boundaries infinite, interior sums normalized gaps") {
  const std::vector<std::vector<double>> means = {
      {1, 4}, {2, 3}, {3, 2}, {4, 1}};
  const std::vector<std::size_t> front = {0, 1, 2, 3};
  std::vector<double> crowding(4, 0.0);
  assign_crowding(means, front, crowding);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(crowding[0] == inf);
  CHECK(crowding[3] == inf);
  CHECK(crowding[1] == doctest::Approx(4.0 / 3.0));
  CHECK(crowding[2] == doctest::Approx(4.0 / 3.0));

  // a flat objective contributes nothing
  const std::vector<std::vector<double>> flat = {{1, 5}, {2, 5}, {3, 5}};
  const std::vector<std::size_t> trio = {0, 1, 2};
  std::vector<double> c2(3, 0.0);
  assign_crowding(flat, trio, c2);
  CHECK(c2[1] == doctest::Approx(1.0));

  // two or fewer: everyone is a boundary
  const std::vector<std::size_t> pair = {0, 1};
  std::vector<double> c3(2, 0.0);
  assign_crowding(means, pair, c3);
  CHECK(c3[0] == inf);
  CHECK(c3[1] == inf);
}

TEST_CASE("ranking peels fronts in dominance order") {
  OperatorConfig cfg;
  cfg.gamma = 0.6;
  std::vector<Individual> pop;
  for (double v : {1.0, 2.0, 3.0}) {
    Individual ind;
    ind.objectives.push_back(
        UncertainValue::closed_form(DistributionSpec::gaussian(v, 1e-8)));
    pop.push_back(std::move(ind));
  }
  const auto fronts = rank_population(pop, parse_operator("gauss"), cfg);
  REQUIRE(fronts.size() == 3);
  CHECK(pop[0].rank == 0);
  CHECK(pop[1].rank == 1);
  CHECK(pop[2].rank == 2);
}

TEST_CASE("a dominance cycle collapses into one front instead of looping") {
  // three intransitive dice: A beats B beats C beats A with p = 5/9
  OperatorConfig cfg;
  cfg.gamma = 0.52;
  cfg.sense = Sense::Maximize;
  std::vector<Individual> pop;
  pop.push_back(sampled({2, 2, 4, 4, 9, 9}));
  pop.push_back(sampled({1, 1, 6, 6, 8, 8}));
  pop.push_back(sampled({3, 3, 5, 5, 7, 7}));
  const auto fronts = rank_population(pop, parse_operator("pw"), cfg);
  REQUIRE(fronts.size() == 1);
  CHECK(fronts[0].size() == 3);
  for (const auto& ind : pop) CHECK(ind.rank == 0);
}

TEST_CASE("tournament prefers rank, then crowding") {
  std::vector<Individual> pop(2);
  pop[0].rank = 0;
  pop[1].rank = 1;
  RandomStream rs(5);
  int wins0 = 0;
  for (int i = 0; i < 200; ++i)
    if (binary_tournament(pop, rs) == 0) ++wins0;
  CHECK(wins0 > 100);  // rank 0 also wins every mixed draw

  pop[1].rank = 0;
  pop[0].crowding = 2.0;
  pop[1].crowding = 1.0;
  RandomStream rs2(5);
  int crowd_wins = 0;
  for (int i = 0; i < 200; ++i)
    if (binary_tournament(pop, rs2) == 0) ++crowd_wins;
  CHECK(crowd_wins > 100);
}

TEST_CASE("crossover keeps children in the box and is seed-stable") {
  VariationConfig vc;
  const std::vector<double> a = {0.3, 0.9, 0.5};
  const std::vector<double> b = {0.7, 0.1, 0.5};
  RandomStream r1(11);
  RandomStream r2(11);
  const auto [c1, c2] = sbx_crossover(a, b, r1, vc);
  const auto [d1, d2] = sbx_crossover(a, b, r2, vc);
  CHECK(c1 == d1);
  CHECK(c2 == d2);
  for (double v : c1) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // identical variable values pass through untouched
  CHECK(c1[2] == 0.5);
  CHECK(c2[2] == 0.5);

  VariationConfig off;
  off.crossover_probability = 0.0;
  RandomStream r3(11);
  const auto [e1, e2] = sbx_crossover(a, b, r3, off);
  CHECK(e1 == a);
  CHECK(e2 == b);
}

TEST_CASE("mutation respects its probability and the box") {
  VariationConfig vc;
  vc.mutation_probability = 1.0;
  const std::vector<double> x = {0.0, 0.5, 1.0};
  RandomStream rs(13);
  bool changed = false;
  for (int i = 0; i < 20; ++i) {
    const auto y = polynomial_mutation(x, rs, vc);
    for (double v : y) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    changed = changed || y != x;
  }
  CHECK(changed);

  vc.mutation_probability = 0.0;
  CHECK(polynomial_mutation(x, rs, vc) == x);

  vc.mutation_probability = -1.0;  // caller must resolve the default
  CHECK(code_of([&] { polynomial_mutation(x, rs, vc); }) == ErrorCode::Config);
}

TEST_CASE("a small run respects budget, shape and determinism") {
  const RunRecord rec = run_nsga2(small_problem(), small_config());
  CHECK(rec.problem == "udtlz2");
  CHECK(rec.population == 8);
  CHECK(rec.generations == 3);
  REQUIRE(rec.snapshots.size() == 3);
  CHECK(rec.snapshots[0].gen == 1);
  CHECK(rec.snapshots[2].gen == 3);
  for (const Snapshot& s : rec.snapshots) {
    CHECK(s.entries.size() == 8);
    for (const SnapshotEntry& e : s.entries) {
      CHECK(e.x.size() == 7);
      CHECK(e.mean.size() == 3);
      CHECK(e.min.size() == 3);
      CHECK(e.max.size() == 3);
      for (int j = 0; j < 3; ++j) {
        CHECK(e.min[j] <= e.mean[j]);
        CHECK(e.mean[j] <= e.max[j]);
      }
    }
  }
  // every individual of every generation is evaluated with all its draws
  CHECK(rec.evaluations == 8 * 20 * 4);
  CHECK(rec.gen_seconds.size() == 3);

  const RunRecord again = run_nsga2(small_problem(), small_config());
  CHECK(again.snapshots[2].entries[0].mean == rec.snapshots[2].entries[0].mean);
  OptimizerConfig other = small_config();
  other.seed = 8;
  const RunRecord different = run_nsga2(small_problem(), other);
  CHECK(different.snapshots[2].entries[0].mean !=
        rec.snapshots[2].entries[0].mean);
}

TEST_CASE("odd populations drop the spare child, keeping the exact budget") {
  OptimizerConfig cfg = small_config();
  cfg.population = 7;
  cfg.generations = 2;
  const RunRecord rec = run_nsga2(small_problem(), cfg);
  REQUIRE(rec.snapshots.size() == 2);
  for (const Snapshot& s : rec.snapshots) CHECK(s.entries.size() == 7);
  CHECK(rec.evaluations == 7 * 20 * 3);
}

TEST_CASE("run records survive the CSV round trip exactly") {
  namespace fs = std::filesystem;
  const RunRecord rec = run_nsga2(small_problem(), small_config());
  const auto path = (fs::temp_directory_path() / "umo_run_test.csv").string();
  write_run_csv(path, rec);
  const RunRecord back = read_run_csv(path);
  CHECK(back.problem == rec.problem);
  CHECK(back.n == rec.n);
  CHECK(back.m == rec.m);
  CHECK(back.population == rec.population);
  CHECK(back.generations == rec.generations);
  CHECK(back.samples == rec.samples);
  CHECK(back.op == rec.op);
  CHECK(back.gamma == rec.gamma);
  CHECK(back.seed == rec.seed);
  REQUIRE(back.snapshots.size() == rec.snapshots.size());
  for (std::size_t g = 0; g < rec.snapshots.size(); ++g) {
    const auto& sa = rec.snapshots[g];
    const auto& sb = back.snapshots[g];
    CHECK(sb.gen == sa.gen);
    REQUIRE(sb.entries.size() == sa.entries.size());
    for (std::size_t i = 0; i < sa.entries.size(); ++i) {
      CHECK(sb.entries[i].x == sa.entries[i].x);
      CHECK(sb.entries[i].mean == sa.entries[i].mean);
      CHECK(sb.entries[i].min == sa.entries[i].min);
      CHECK(sb.entries[i].max == sa.entries[i].max);
      CHECK(sb.entries[i].rank == sa.entries[i].rank);
    }
  }
  // writing the reread record reproduces the file byte for byte
  const auto path2 = (fs::temp_directory_path() / "umo_run_test2.csv").string();
  write_run_csv(path2, back);
  CHECK(slurp(path) == slurp(path2));
  std::remove(path.c_str());
  std::remove(path2.c_str());

  CHECK(code_of([&] { read_run_csv("/nonexistent/umo.csv"); }) == ErrorCode::Io);
}

TEST_SUITE_END();
