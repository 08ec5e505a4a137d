#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>

#include "text.hpp"

namespace umo {

bool crisp_dominates(std::span<const double> a, std::span<const double> b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

namespace {

void check_dimensions(const std::vector<FrontPoint>& points) {
  for (const auto& p : points) {
    if (p.f.empty() || p.f.size() != points.front().f.size())
      fail(ErrorCode::InvalidArgument,
           "front points disagree on objective count");
    for (double v : p.f)
      if (!std::isfinite(v))
        fail(ErrorCode::IndicatorDomainError,
             "front point has a non-finite objective");
  }
}

}  // namespace

std::vector<FrontPoint> crisp_front(const std::vector<FrontPoint>& points) {
  check_dimensions(points);
  std::vector<FrontPoint> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < points.size() && !drop; ++j)
      drop = j != i && crisp_dominates(points[j].f, points[i].f);
    for (const auto& kept : out) {
      if (drop) break;
      drop = kept.f == points[i].f;
    }
    if (!drop) out.push_back(points[i]);
  }
  return out;
}

std::vector<FrontPoint> snapshot_front(const Snapshot& snap) {
  std::vector<FrontPoint> points;
  points.reserve(snap.entries.size());
  for (const auto& e : snap.entries)
    points.push_back(FrontPoint{e.mean, e.min, e.max});
  return crisp_front(points);
}

std::vector<FrontPoint> build_reference_front(
    const std::vector<std::vector<FrontPoint>>& fronts) {
  std::vector<FrontPoint> unioned;
  for (const auto& front : fronts)
    unioned.insert(unioned.end(), front.begin(), front.end());
  if (unioned.empty())
    fail(ErrorCode::EmptyReference, "no points to build a reference front from");
  return crisp_front(unioned);
}

namespace {

double epsilon_generic(const std::vector<FrontPoint>& approx,
                       const std::vector<FrontPoint>& reference,
                       bool multiplicative) {
  if (approx.empty() || reference.empty())
    fail(ErrorCode::IndicatorDomainError,
         "epsilon indicator needs non-empty fronts");
  if (approx.front().f.size() != reference.front().f.size())
    fail(ErrorCode::InvalidArgument, "fronts disagree on objective count");
  if (multiplicative) {
    for (const auto* front : {&approx, &reference})
      for (const auto& p : *front)
        for (double v : p.f)
          if (!(v > 0.0))
            fail(ErrorCode::IndicatorDomainError,
                 "multiplicative epsilon needs strictly positive objectives");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : approx) {
      double need = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < r.f.size(); ++i) {
        const double e = multiplicative ? a.f[i] / r.f[i] : a.f[i] - r.f[i];
        need = std::max(need, e);
      }
      best = std::min(best, need);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double epsilon_multiplicative(const std::vector<FrontPoint>& approx,
                              const std::vector<FrontPoint>& reference) {
  return epsilon_generic(approx, reference, true);
}

double epsilon_additive(const std::vector<FrontPoint>& approx,
                        const std::vector<FrontPoint>& reference) {
  return epsilon_generic(approx, reference, false);
}

double dci(const std::vector<FrontPoint>& approx,
           const std::vector<FrontPoint>& reference, int divisions) {
  if (divisions < 1)
    fail(ErrorCode::Config, "grid divisions must be at least 1");
  if (approx.empty() || reference.empty())
    fail(ErrorCode::IndicatorDomainError, "diversity score needs non-empty fronts");
  const std::size_t m = approx.front().f.size();
  if (reference.front().f.size() != m)
    fail(ErrorCode::InvalidArgument, "fronts disagree on objective count");

  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  for (const auto* front : {&approx, &reference})
    for (const auto& p : *front)
      for (std::size_t i = 0; i < m; ++i) {
        lo[i] = std::min(lo[i], p.f[i]);
        hi[i] = std::max(hi[i], p.f[i]);
      }

  // A dimension without spread collapses to a single cell.
  std::vector<double> width(m, 0.0);
  std::vector<bool> flat(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const double range = hi[i] - lo[i];
    flat[i] = !(range > 0.0);
    width[i] = flat[i] ? 1.0 : range / divisions;
  }

  auto quantize = [&](const FrontPoint& p) {
    std::vector<int> cell(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (flat[i]) {
        cell[i] = 0;
        continue;
      }
      const int c = static_cast<int>(std::floor((p.f[i] - lo[i]) / width[i]));
      cell[i] = std::clamp(c, 0, divisions - 1);
    }
    return cell;
  };

  std::set<std::vector<int>> approx_cells;
  std::set<std::vector<int>> reference_cells;
  for (const auto& p : approx) approx_cells.insert(quantize(p));
  for (const auto& p : reference) reference_cells.insert(quantize(p));

  double d = 0.0;
  for (const auto& ca : approx_cells) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& cr : reference_cells) {
      double sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double diff = ca[i] - cr[i];
        sq += diff * diff;
      }
      nearest = std::min(nearest, std::sqrt(sq));
    }
    d += nearest;
  }
  if (d == 0.0) return 1.0;

  double diag_sq = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (!flat[i]) diag_sq += static_cast<double>(divisions - 1) * (divisions - 1);
  const double d_max = static_cast<double>(approx_cells.size()) * std::sqrt(diag_sq);
  return 1.0 - d / d_max;
}

double diagonal_distance(const std::vector<FrontPoint>& solutions) {
  if (solutions.empty())
    fail(ErrorCode::IndicatorDomainError,
         "robustness metric needs at least one solution");
  double sum = 0.0;
  for (const auto& p : solutions) {
    if (!p.has_bounds() || p.lo.size() != p.f.size() || p.hi.size() != p.f.size())
      fail(ErrorCode::MissingBounds,
           "solution lacks per-objective bounds");
    double sq = 0.0;
    for (std::size_t i = 0; i < p.f.size(); ++i) {
      const double range = p.hi[i] - p.lo[i];
      sq += range * range;
    }
    sum += std::sqrt(sq);
  }
  return sum / static_cast<double>(solutions.size());
}

double lower_median(std::vector<double> values) {
  if (values.empty())
    fail(ErrorCode::NoRuns, "median of an empty list");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

std::size_t median_run_index(std::span<const double> final_eps) {
  if (final_eps.empty()) fail(ErrorCode::NoRuns, "no runs to choose from");
  std::vector<std::size_t> order(final_eps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return final_eps[a] < final_eps[b];
  });
  return order[(order.size() - 1) / 2];
}

void write_front_csv(const std::string& path,
                     const std::vector<FrontPoint>& front) {
  if (front.empty())
    fail(ErrorCode::EmptyReference, "refusing to write an empty front");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  const std::size_t m = front.front().f.size();
  for (std::size_t i = 1; i <= m; ++i) out << (i == 1 ? "f" : ",f") << i;
  out << "\n";
  for (const auto& p : front) {
    for (std::size_t i = 0; i < m; ++i)
      out << (i == 0 ? "" : ",") << format_double(p.f[i]);
    out << "\n";
  }
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

std::vector<FrontPoint> read_front_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("f1", 0) != 0)
    fail(ErrorCode::Parse, "front file '" + path + "' lacks the f1.. header");
  const std::size_t m = split(line, ',').size();
  std::vector<FrontPoint> front;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != m)
      fail(ErrorCode::Parse, "front row width mismatch in '" + path + "'");
    FrontPoint p;
    p.f.reserve(m);
    for (const auto field : fields) p.f.push_back(parse_double(field));
    front.push_back(std::move(p));
  }
  if (front.empty())
    fail(ErrorCode::EmptyReference, "front file '" + path + "' holds no points");
  return front;
}

}  // namespace umo
