#include "benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"

namespace umo {

namespace {

constexpr double kPi = std::numbers::pi;

void check_decision_vector(const UncertainProblem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.n)
    fail(ErrorCode::InvalidDecisionVector,
         "decision vector has " + std::to_string(x.size()) +
             " entries, problem " + p.name + " needs " + std::to_string(p.n));
  for (double v : x)
    if (!(v >= 0.0 && v <= 1.0))
      fail(ErrorCode::InvalidDecisionVector,
           "decision variables must lie in [0, 1]");
}

}  // namespace

double truncated_sin(double theta, int terms) {
  if (terms < 1)
    fail(ErrorCode::InvalidArgument, "series needs at least one term");
  double term = theta;
  double sum = theta;
  for (int j = 1; j < terms; ++j) {
    term *= -theta * theta / ((2.0 * j) * (2.0 * j + 1.0));
    sum += term;
  }
  return sum;
}

double truncated_cos(double theta, int terms) {
  if (terms < 1)
    fail(ErrorCode::InvalidArgument, "series needs at least one term");
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < terms; ++j) {
    term *= -theta * theta / ((2.0 * j - 1.0) * (2.0 * j));
    sum += term;
  }
  return sum;
}

namespace {

// udtlz1: linear front skeleton, all-variable beta perturbation feeding only
// the tail function g.
std::vector<double> eval_udtlz1(const UncertainProblem& p,
                                std::span<const double> x, RandomStream& rs) {
  const int n = p.n;
  const int m = p.m;
  std::vector<double> bx(x.begin(), x.end());
  if (p.noise)
    for (int i = 1; i <= n; ++i)
      bx[i - 1] =
          std::min(x[i - 1] + 0.001 * rs.beta(10.0 + i, 2.0 + i), 1.0);

  double s = 0.0;
  for (int i = m; i <= n; ++i) {
    const double d = bx[i - 1] - 0.5;
    s += d * d - std::cos(20.0 * kPi * d);
  }
  const double g = 100.0 * (n - m + 1) * s;

  std::vector<double> f(m);
  for (int i = 1; i <= m; ++i) {
    double v = 0.5 * (1.0 + g);
    const int prods = i == 1 ? m - 1 : m - i;
    for (int j = 1; j <= prods; ++j) v *= x[j - 1];
    if (i >= 2) v *= 1.0 - x[m - i];
    f[i - 1] = v;
  }
  return f;
}

// Shared body of udtlz2..5: trig-product skeleton, one additive noise draw
// and one series length per evaluation, variant hooks for g and the angles.
std::vector<double> eval_trig_family(const UncertainProblem& p,
                                     std::span<const double> x,
                                     RandomStream& rs) {
  const int n = p.n;
  const int m = p.m;
  double u1 = 0.0;
  int u2 = 0;
  if (p.noise) {
    u1 = rs.gaussian(0.0, 0.005 * 0.005);
    u2 = p.variant == 3 ? rs.uniform_int(12, 19) : rs.uniform_int(3, 12);
  }
  auto sin_f = [&](double t) { return p.noise ? truncated_sin(t, u2) : std::sin(t); };
  auto cos_f = [&](double t) { return p.noise ? truncated_cos(t, u2) : std::cos(t); };

  double g = 0.0;
  switch (p.variant) {
    case 3: {
      double s = 0.0;
      for (int i = m; i <= n; ++i) {
        const double d = x[i - 1] - 0.5;
        s += d * d - cos_f(20.0 * kPi * d);
      }
      g = 100.0 * (n - m + 1) * s;
      break;
    }
    case 5:
      for (int i = m; i <= n; ++i) g += std::pow(x[i - 1], 0.1);
      break;
    default:
      for (int i = m; i <= n; ++i) {
        const double d = x[i - 1] - 0.5;
        g += d * d;
      }
  }

  std::vector<double> theta(static_cast<std::size_t>(m - 1));
  for (int i = 1; i <= m - 1; ++i) {
    if (p.variant == 5 && i >= 2)
      theta[i - 1] = kPi * (1.0 + 2.0 * g * x[i - 1]) / (4.0 * (1.0 + g));
    else if (p.variant == 4)
      theta[i - 1] = 0.5 * kPi * std::pow(x[i - 1], 100.0);
    else
      theta[i - 1] = 0.5 * kPi * x[i - 1];
  }

  std::vector<double> f(m);
  for (int i = 1; i <= m; ++i) {
    double v = 1.0 + g;
    const int cosines = i == 1 ? m - 1 : m - i;
    for (int j = 1; j <= cosines; ++j) v *= cos_f(theta[j - 1]);
    if (i >= 2) v *= sin_f(theta[m - i]);
    f[i - 1] = v + u1;
  }
  return f;
}

// udtlz6: last objective folds the others in, per-variable gaussian
// perturbation clamped to the box.
std::vector<double> eval_udtlz6(const UncertainProblem& p,
                                std::span<const double> x, RandomStream& rs) {
  const int n = p.n;
  const int m = p.m;
  std::vector<double> bx(x.begin(), x.end());
  if (p.noise)
    for (int i = 1; i <= n; ++i) {
      const double second = (10.0 + i) / 1000.0;
      const double variance = p.stddev_noise ? second * second : second;
      bx[i - 1] = std::clamp(x[i - 1] + rs.gaussian(0.0, variance), 0.0, 1.0);
    }

  double tail = 0.0;
  for (int i = m; i <= n; ++i) tail += bx[i - 1];
  const double g = 1.0 + 9.0 / (n - m + 1) * tail;

  std::vector<double> f(m);
  for (int i = 1; i <= m - 1; ++i) f[i - 1] = bx[i - 1];
  double h = m;
  for (int i = 1; i <= m - 1; ++i)
    h -= f[i - 1] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * f[i - 1]));
  f[m - 1] = (1.0 + g) * h;
  return f;
}

}  // namespace

std::vector<double> evaluate_once(const UncertainProblem& problem,
                                  std::span<const double> x, RandomStream& rs) {
  check_decision_vector(problem, x);
  switch (problem.variant) {
    case 1: return eval_udtlz1(problem, x, rs);
    case 2:
    case 3:
    case 4:
    case 5: return eval_trig_family(problem, x, rs);
    case 6: return eval_udtlz6(problem, x, rs);
    default:
      fail(ErrorCode::UnknownProblem,
           "problem '" + problem.name + "' has no evaluator");
  }
}

EvaluationResult evaluate_population(const UncertainProblem& problem,
                                     std::span<const double> x,
                                     std::size_t count, RandomStream& rs) {
  if (count < 1)
    fail(ErrorCode::InvalidPopulation, "sample count must be >= 1");
  EvaluationResult result;
  result.raw.assign(static_cast<std::size_t>(problem.m), {});
  for (auto& column : result.raw) column.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto f = evaluate_once(problem, x, rs);
    for (int j = 0; j < problem.m; ++j)
      result.raw[static_cast<std::size_t>(j)].push_back(
          f[static_cast<std::size_t>(j)]);
  }
  result.populations.reserve(result.raw.size());
  for (const auto& column : result.raw)
    result.populations.push_back(SamplePopulation::from_raw(column));
  return result;
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {
      "udtlz1", "udtlz2", "udtlz3", "udtlz4", "udtlz5", "udtlz6"};
  return names;
}

UncertainProblem registry_lookup(const std::string& name,
                                 const ProblemOptions& opt) {
  const auto& names = registry_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end())
    fail(ErrorCode::UnknownProblem, "unknown problem '" + name + "'");
  if (opt.m < 2)
    fail(ErrorCode::Config, "problems need at least two objectives");
  if (opt.n < opt.m)
    fail(ErrorCode::Config,
         "decision dimension must be at least the objective dimension");
  UncertainProblem p;
  p.name = name;
  p.variant = static_cast<int>(it - names.begin()) + 1;
  p.n = opt.n;
  p.m = opt.m;
  p.noise = opt.noise;
  p.stddev_noise = opt.stddev_noise;
  return p;
}

}  // namespace umo
