#include "optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "text.hpp"

namespace umo {

void OptimizerConfig::validate() const {
  if (population < 2)
    fail(ErrorCode::Config, "population size must be at least 2");
  if (generations < 1)
    fail(ErrorCode::Config, "generation count must be at least 1");
  if (samples < 1)
    fail(ErrorCode::Config, "sample count must be at least 1");
  op_cfg.validate();
  const auto& v = variation;
  if (!(v.crossover_probability >= 0.0 && v.crossover_probability <= 1.0))
    fail(ErrorCode::Config, "crossover probability must lie in [0, 1]");
  if (v.mutation_probability > 1.0)
    fail(ErrorCode::Config, "mutation probability must lie in [0, 1]");
  if (!(v.crossover_index >= 0.0) || !(v.mutation_index >= 0.0))
    fail(ErrorCode::Config, "distribution indices must be nonnegative");
}

std::vector<std::vector<std::size_t>> rank_population(
    std::vector<Individual>& pop, const OperatorId& op,
    const OperatorConfig& cfg) {
  const std::size_t n = pop.size();
  if (n == 0) fail(ErrorCode::InvalidPopulation, "cannot rank an empty population");

  std::vector<std::vector<PreparedComparand>> prepared;
  prepared.reserve(n);
  for (const auto& ind : pop) prepared.push_back(prepare_objectives(ind, op, cfg));

  // Full pairwise relation up front; the peeling below re-reads it, which
  // stays correct even when the relation is not transitive.
  std::vector<char> dom(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dominates_prepared(prepared[i], prepared[j], cfg))
        dom[i * n + j] = 1;

  std::vector<char> remaining(n, 1);
  std::size_t left = n;
  std::vector<std::vector<std::size_t>> fronts;
  int rank = 0;
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < n; ++i) {
      if (!remaining[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < n && !dominated; ++j)
        dominated = remaining[j] && j != i && dom[j * n + i];
      if (!dominated) front.push_back(i);
    }
    // A dominance cycle can leave no undominated individual; close the
    // ranking by lumping the rest into one final front.
    if (front.empty())
      for (std::size_t i = 0; i < n; ++i)
        if (remaining[i]) front.push_back(i);
    for (std::size_t idx : front) {
      pop[idx].rank = rank;
      remaining[idx] = 0;
    }
    left -= front.size();
    fronts.push_back(std::move(front));
    ++rank;
  }

  std::vector<std::vector<double>> means;
  means.reserve(n);
  for (const auto& ind : pop) means.push_back(mean_objectives(ind));
  std::vector<double> crowding(n, 0.0);
  for (const auto& front : fronts) assign_crowding(means, front, crowding);
  for (std::size_t i = 0; i < n; ++i) pop[i].crowding = crowding[i];
  return fronts;
}

void assign_crowding(const std::vector<std::vector<double>>& means,
                     std::span<const std::size_t> front,
                     std::span<double> crowding_out) {
  if (front.empty()) return;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t idx : front) crowding_out[idx] = 0.0;
  if (front.size() <= 2) {
    for (std::size_t idx : front) crowding_out[idx] = inf;
    return;
  }
  const std::size_t m = means[front[0]].size();
  std::vector<std::size_t> order(front.begin(), front.end());
  for (std::size_t j = 0; j < m; ++j) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return means[a][j] < means[b][j];
                     });
    const double lo = means[order.front()][j];
    const double hi = means[order.back()][j];
    crowding_out[order.front()] = inf;
    crowding_out[order.back()] = inf;
    if (!(hi - lo > 0.0)) continue;  // flat objective: nothing to spread
    for (std::size_t k = 1; k + 1 < order.size(); ++k)
      crowding_out[order[k]] +=
          (means[order[k + 1]][j] - means[order[k - 1]][j]) / (hi - lo);
  }
}

std::size_t binary_tournament(const std::vector<Individual>& pop,
                              RandomStream& rs) {
  const auto last = static_cast<std::int64_t>(pop.size()) - 1;
  const auto i = static_cast<std::size_t>(rs.uniform_int(0, last));
  const auto j = static_cast<std::size_t>(rs.uniform_int(0, last));
  if (pop[j].rank < pop[i].rank) return j;
  if (pop[i].rank < pop[j].rank) return i;
  if (pop[j].crowding > pop[i].crowding) return j;
  return i;
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(
    std::span<const double> a, std::span<const double> b, RandomStream& rs,
    const VariationConfig& vc) {
  std::vector<double> c1(a.begin(), a.end());
  std::vector<double> c2(b.begin(), b.end());
  if (!(rs.uniform01() < vc.crossover_probability)) return {c1, c2};
  const double exp = 1.0 / (vc.crossover_index + 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rs.uniform01() > 0.5) continue;        // variable sits this one out
    if (std::fabs(a[i] - b[i]) <= 1e-14) continue;
    const double u = rs.uniform01();
    const double beta = u <= 0.5 ? std::pow(2.0 * u, exp)
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), exp);
    c1[i] = std::clamp(0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]), 0.0, 1.0);
    c2[i] = std::clamp(0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]), 0.0, 1.0);
  }
  return {c1, c2};
}

std::vector<double> polynomial_mutation(std::span<const double> x,
                                        RandomStream& rs,
                                        const VariationConfig& vc) {
  if (!(vc.mutation_probability >= 0.0 && vc.mutation_probability <= 1.0))
    fail(ErrorCode::Config, "mutation probability must be resolved to [0, 1]");
  std::vector<double> out(x.begin(), x.end());
  const double exp = 1.0 / (vc.mutation_index + 1.0);
  for (double& v : out) {
    if (!(rs.uniform01() < vc.mutation_probability)) continue;
    const double u = rs.uniform01();
    const double delta = u < 0.5 ? std::pow(2.0 * u, exp) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), exp);
    v = std::clamp(v + delta, 0.0, 1.0);
  }
  return out;
}

RunRecord run_nsga2(const UncertainProblem& problem,
                    const OptimizerConfig& cfg) {
  cfg.validate();
  VariationConfig vc = cfg.variation;
  if (vc.mutation_probability < 0.0)
    vc.mutation_probability = 1.0 / problem.n;

  RunRecord rec;
  rec.problem = problem.name;
  rec.n = problem.n;
  rec.m = problem.m;
  rec.population = cfg.population;
  rec.generations = cfg.generations;
  rec.samples = cfg.samples;
  rec.op = operator_name(cfg.op);
  rec.gamma = cfg.op_cfg.gamma;
  rec.seed = cfg.seed;

  RandomStream init_rs(RandomStream::mix(cfg.seed, 1));
  RandomStream var_rs(RandomStream::mix(cfg.seed, 2));
  const std::uint64_t eval_base = RandomStream::mix(cfg.seed, 3);
  std::uint64_t eval_counter = 0;

  // Each individual evaluates on its own child stream, so evaluation noise
  // never shifts the variation draw sequence.
  auto evaluate = [&](std::vector<double> x) {
    RandomStream ers(RandomStream::mix(eval_base, eval_counter++));
    auto res = evaluate_population(problem, x, static_cast<std::size_t>(cfg.samples), ers);
    rec.evaluations += cfg.samples;
    Individual ind;
    ind.x = std::move(x);
    ind.raw = std::move(res.raw);
    ind.objectives.reserve(res.populations.size());
    for (auto& p : res.populations)
      ind.objectives.push_back(UncertainValue::from_population(std::move(p)));
    return ind;
  };

  std::vector<Individual> parents;
  parents.reserve(static_cast<std::size_t>(cfg.population));
  for (int i = 0; i < cfg.population; ++i) {
    std::vector<double> x(static_cast<std::size_t>(problem.n));
    for (double& v : x) v = init_rs.uniform01();
    parents.push_back(evaluate(std::move(x)));
  }
  rank_population(parents, cfg.op, cfg.op_cfg);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<Individual> offspring;
    offspring.reserve(static_cast<std::size_t>(cfg.population));
    while (static_cast<int>(offspring.size()) < cfg.population) {
      const Individual& pa = parents[binary_tournament(parents, var_rs)];
      const Individual& pb = parents[binary_tournament(parents, var_rs)];
      auto [c1, c2] = sbx_crossover(pa.x, pb.x, var_rs, vc);
      offspring.push_back(evaluate(polynomial_mutation(c1, var_rs, vc)));
      // An odd population drops the trailing child of the last pair, so the
      // evaluation budget stays exactly population * samples per generation.
      if (static_cast<int>(offspring.size()) < cfg.population)
        offspring.push_back(evaluate(polynomial_mutation(c2, var_rs, vc)));
    }

    std::vector<Individual> combined;
    combined.reserve(parents.size() + offspring.size());
    for (auto& p : parents) combined.push_back(std::move(p));
    for (auto& o : offspring) combined.push_back(std::move(o));
    const auto fronts = rank_population(combined, cfg.op, cfg.op_cfg);

    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(cfg.population));
    for (const auto& front : fronts) {
      if (static_cast<int>(next.size() + front.size()) <= cfg.population) {
        for (std::size_t idx : front) next.push_back(std::move(combined[idx]));
      } else {
        std::vector<std::size_t> order(front.begin(), front.end());
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) {
                           return combined[x].crowding > combined[y].crowding;
                         });
        for (std::size_t idx : order) {
          if (static_cast<int>(next.size()) == cfg.population) break;
          next.push_back(std::move(combined[idx]));
        }
      }
      if (static_cast<int>(next.size()) == cfg.population) break;
    }
    parents = std::move(next);
    // Fresh ranks and crowding for the survivors: the next tournament and
    // the snapshot both describe this population on its own.
    rank_population(parents, cfg.op, cfg.op_cfg);

    rec.gen_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count());

    Snapshot snap;
    snap.gen = gen;
    snap.entries.reserve(parents.size());
    for (const Individual& ind : parents) {
      SnapshotEntry e;
      e.x = ind.x;
      e.mean.reserve(ind.objectives.size());
      for (const auto& v : ind.objectives) {
        e.mean.push_back(v.mean());
        const auto [lo, hi] = v.bounds();
        e.min.push_back(lo);
        e.max.push_back(hi);
      }
      e.rank = ind.rank;
      e.crowding = ind.crowding;
      snap.entries.push_back(std::move(e));
    }
    rec.snapshots.push_back(std::move(snap));
  }
  return rec;
}

// ----------------------------------------------------------------- run CSV

void write_run_csv(const std::string& path, const RunRecord& rec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << "# problem=" << rec.problem << " n=" << rec.n << " m=" << rec.m
      << " lambda=" << rec.population << " generations=" << rec.generations
      << " samples=" << rec.samples << " op=" << rec.op
      << " gamma=" << format_double(rec.gamma) << " seed=" << rec.seed << "\n";
  out << "gen,id";
  for (int i = 1; i <= rec.n; ++i) out << ",x" << i;
  for (int i = 1; i <= rec.m; ++i) out << ",mean_f" << i;
  for (int i = 1; i <= rec.m; ++i) out << ",min_f" << i;
  for (int i = 1; i <= rec.m; ++i) out << ",max_f" << i;
  out << ",rank,crowding\n";
  for (const Snapshot& snap : rec.snapshots) {
    for (std::size_t id = 0; id < snap.entries.size(); ++id) {
      const SnapshotEntry& e = snap.entries[id];
      out << snap.gen << ',' << id;
      for (double v : e.x) out << ',' << format_double(v);
      for (double v : e.mean) out << ',' << format_double(v);
      for (double v : e.min) out << ',' << format_double(v);
      for (double v : e.max) out << ',' << format_double(v);
      out << ',' << e.rank << ',' << format_double(e.crowding) << "\n";
    }
  }
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

RunRecord read_run_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  RunRecord rec;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    fail(ErrorCode::Parse, "run file '" + path + "' lacks the settings line");
  const std::string settings = line.substr(2);
  for (const auto token : split(settings, ' ')) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    if (key == "problem") rec.problem = std::string(value);
    else if (key == "n") rec.n = static_cast<int>(parse_int(value));
    else if (key == "m") rec.m = static_cast<int>(parse_int(value));
    else if (key == "lambda") rec.population = static_cast<int>(parse_int(value));
    else if (key == "generations") rec.generations = static_cast<int>(parse_int(value));
    else if (key == "samples") rec.samples = static_cast<int>(parse_int(value));
    else if (key == "op") rec.op = std::string(value);
    else if (key == "gamma") rec.gamma = parse_double(value);
    else if (key == "seed") {
      const auto res =
          std::from_chars(value.data(), value.data() + value.size(), rec.seed);
      if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        fail(ErrorCode::Parse, "bad seed in run file '" + path + "'");
    }
  }
  if (rec.n < 1 || rec.m < 1)
    fail(ErrorCode::Parse, "run file '" + path + "' has no dimensions");
  if (!std::getline(in, line))
    fail(ErrorCode::Parse, "run file '" + path + "' has no header");

  const std::size_t width = 2 + static_cast<std::size_t>(rec.n) +
                            3 * static_cast<std::size_t>(rec.m) + 2;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != width)
      fail(ErrorCode::Parse, "run row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(width));
    const int gen = static_cast<int>(parse_int(fields[0]));
    if (rec.snapshots.empty() || rec.snapshots.back().gen != gen) {
      Snapshot s;
      s.gen = gen;
      rec.snapshots.push_back(std::move(s));
    }
    SnapshotEntry e;
    std::size_t at = 2;
    for (int i = 0; i < rec.n; ++i) e.x.push_back(parse_double(fields[at++]));
    for (int i = 0; i < rec.m; ++i) e.mean.push_back(parse_double(fields[at++]));
    for (int i = 0; i < rec.m; ++i) e.min.push_back(parse_double(fields[at++]));
    for (int i = 0; i < rec.m; ++i) e.max.push_back(parse_double(fields[at++]));
    e.rank = static_cast<int>(parse_int(fields[at++]));
    e.crowding = parse_double(fields[at]);
    rec.snapshots.back().entries.push_back(std::move(e));
  }
  if (rec.snapshots.empty())
    fail(ErrorCode::Parse, "run file '" + path + "' holds no rows");
  return rec;
}

}  // namespace umo
