#include "dominance.hpp"

namespace umo {

std::vector<double> mean_objectives(const Individual& ind) {
  std::vector<double> out;
  out.reserve(ind.objectives.size());
  for (const auto& v : ind.objectives) out.push_back(v.mean());
  return out;
}

std::vector<PreparedComparand> prepare_objectives(const Individual& ind,
                                                  const OperatorId& op,
                                                  const OperatorConfig& cfg) {
  if (ind.objectives.empty())
    fail(ErrorCode::IncompatibleIndividuals, "individual has no objectives");
  if (!ind.raw.empty() && ind.raw.size() != ind.objectives.size())
    fail(ErrorCode::IncompatibleIndividuals,
         "raw draw columns do not match the objective count");
  std::vector<PreparedComparand> out;
  out.reserve(ind.objectives.size());
  static const std::vector<double> no_raw;
  for (std::size_t j = 0; j < ind.objectives.size(); ++j) {
    const auto& raw = ind.raw.empty() ? no_raw : ind.raw[j];
    out.push_back(prepare(ind.objectives[j], raw, op, cfg));
  }
  return out;
}

bool dominates_prepared(std::span<const PreparedComparand> a,
                        std::span<const PreparedComparand> b,
                        const OperatorConfig& cfg) {
  if (a.empty() || a.size() != b.size())
    fail(ErrorCode::IncompatibleIndividuals,
         "individuals expose different objective counts");
  bool any_better = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Decision d = compare_prepared(a[j], b[j], cfg).decision;
    if (d == Decision::Worse) return false;
    if (d == Decision::Better) any_better = true;
  }
  return any_better;
}

bool dominates(const Individual& a, const Individual& b, const OperatorId& op,
               const OperatorConfig& cfg) {
  const auto pa = prepare_objectives(a, op, cfg);
  const auto pb = prepare_objectives(b, op, cfg);
  return dominates_prepared(pa, pb, cfg);
}

double dominance_probability_independent(const Individual& a,
                                         const Individual& b,
                                         const OperatorId& op,
                                         const OperatorConfig& cfg) {
  const auto pa = prepare_objectives(a, op, cfg);
  const auto pb = prepare_objectives(b, op, cfg);
  if (pa.size() != pb.size())
    fail(ErrorCode::IncompatibleIndividuals,
         "individuals expose different objective counts");
  double p = 1.0;
  for (std::size_t j = 0; j < pa.size(); ++j) {
    const ComparisonReport r = compare_prepared(pa[j], pb[j], cfg);
    p *= cfg.sense == Sense::Minimize ? r.p_less : r.p_greater;
  }
  return p;
}

std::vector<Individual> non_dominated_filter(const std::vector<Individual>& pop,
                                             const OperatorId& op,
                                             const OperatorConfig& cfg) {
  std::vector<std::vector<PreparedComparand>> prepared;
  prepared.reserve(pop.size());
  for (const auto& ind : pop) prepared.push_back(prepare_objectives(ind, op, cfg));

  std::vector<Individual> out;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < pop.size() && !dominated; ++j)
      if (j != i) dominated = dominates_prepared(prepared[j], prepared[i], cfg);
    if (!dominated) out.push_back(pop[i]);
  }
  return out;
}

}  // namespace umo
