#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "core/benchmarks.hpp"
#include "doctest.h"

using namespace umo;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

UncertainProblem make(const char* name, bool noise, int n = 7, int m = 3) {
  ProblemOptions opts;
  opts.n = n;
  opts.m = m;
  opts.noise = noise;
  return registry_lookup(name, opts);
}

std::vector<double> eval(const UncertainProblem& p, std::vector<double> x,
                         std::uint64_t seed = 1) {
  RandomStream rs(seed);
  return evaluate_once(p, x, rs);
}

}  // namespace

TEST_SUITE_BEGIN("benchmarks");

TEST_CASE("truncated series match their reference prefix sums") {
  CHECK(truncated_sin(kPi / 2, 5) ==
        doctest::Approx(1.0000035425842861).epsilon(1e-14));
  CHECK(truncated_sin(kPi / 2, 3) ==
        doctest::Approx(1.0045248555348174).epsilon(1e-14));
  CHECK(truncated_cos(kPi, 2) ==
        doctest::Approx(-3.934802200544679).epsilon(1e-14));
  CHECK(truncated_sin(0.0, 1) == 0.0);
  CHECK(truncated_cos(0.0, 1) == 1.0);
  // long prefixes converge to the library functions on the first quadrant
  for (int i = 0; i <= 20; ++i) {
    const double t = kPi / 2 * i / 20.0;
    CHECK(truncated_sin(t, 12) == doctest::Approx(std::sin(t)).epsilon(1e-14));
  }
  CHECK(code_of([] { truncated_sin(1.0, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("registry knows its six problems and checks shapes") {
  for (const auto& name : registry_names()) {
    const UncertainProblem p = make(name.c_str(), true);
    CHECK(p.n == 7);
    CHECK(p.m == 3);
  }
  CHECK(registry_names().size() == 6);
  CHECK(code_of([] { make("dtlz9", true); }) == ErrorCode::UnknownProblem);
  CHECK(code_of([] { make("udtlz2", true, 2, 3); }) == ErrorCode::Config);
  CHECK(code_of([] { make("udtlz2", true, 7, 1); }) == ErrorCode::Config);
}

TEST_CASE("decision vectors are validated") {
  const UncertainProblem p = make("udtlz2", false);
  CHECK(code_of([&] { eval(p, {0.5, 0.5}); }) ==
        ErrorCode::InvalidDecisionVector);
  CHECK(code_of([&] {
          eval(p, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 1.5});
        }) == ErrorCode::InvalidDecisionVector);
}

TEST_CASE("noise off draws nothing from the stream") {
  const std::vector<double> x = {0.2, 0.7, 0.55, 0.5, 0.45, 0.6, 0.5};
  for (const auto& name : registry_names()) {
    const UncertainProblem p = make(name.c_str(), false);
    RandomStream used(42);
    RandomStream fresh(42);
    evaluate_once(p, x, used);
    CHECK(used.next_u64() == fresh.next_u64());
  }
}

TEST_CASE("quiet trig-family values against an independent transcription") {
  const std::vector<double> x = {0.2, 0.7, 0.55, 0.5, 0.45, 0.6, 0.5};
  const auto f = eval(make("udtlz2", false), x);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == doctest::Approx(0.43824718246009).epsilon(1e-13));
  CHECK(f[1] == doctest::Approx(0.860108524304205).epsilon(1e-13));
  CHECK(f[2] == doctest::Approx(0.31365224929057156).epsilon(1e-13));
}

TEST_CASE("quiet trig-family objectives satisfy the sphere identity") {
  RandomStream rs(11);
  for (const char* name : {"udtlz2", "udtlz3", "udtlz4", "udtlz5"}) {
    const UncertainProblem p = make(name, false);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(7);
      for (double& v : x) v = rs.uniform01();
      const auto f = eval(p, x);
      double g = 0.0;
      switch (p.variant) {
        case 3:
          for (int i = 3; i <= 7; ++i) {
            const double d = x[i - 1] - 0.5;
            g += d * d - std::cos(20.0 * kPi * d);
          }
          g *= 100.0 * 5.0;
          break;
        case 5:
          for (int i = 3; i <= 7; ++i) g += std::pow(x[i - 1], 0.1);
          break;
        default:
          for (int i = 3; i <= 7; ++i) {
            const double d = x[i - 1] - 0.5;
            g += d * d;
          }
      }
      double sq = 0.0;
      for (double v : f) sq += v * v;
      CHECK(sq == doctest::Approx((1.0 + g) * (1.0 + g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("quiet linear-front objectives sum to half of 1+g") {
  RandomStream rs(13);
  const UncertainProblem p = make("udtlz1", false);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(7);
    for (double& v : x) v = rs.uniform01();
    const auto f = eval(p, x);
    double g = 0.0;
    for (int i = 3; i <= 7; ++i) {
      const double d = x[i - 1] - 0.5;
      g += d * d - std::cos(20.0 * kPi * d);
    }
    g *= 100.0 * 5.0;
    CHECK(f[0] + f[1] + f[2] ==
          doctest::Approx(0.5 * (1.0 + g)).epsilon(1e-10));
  }
}

TEST_CASE("quiet fold-family transcription on a fixed vector") {
  const std::vector<double> x = {0.2, 0.7, 0.55, 0.5, 0.45, 0.6, 0.5};
  const auto f = eval(make("udtlz6", false), x);
  const double g = 1.0 + 9.0 / 5.0 * (0.55 + 0.5 + 0.45 + 0.6 + 0.5);
  double h = 3.0;
  for (double fi : {0.2, 0.7})
    h -= fi / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * fi));
  CHECK(f[0] == 0.2);
  CHECK(f[1] == 0.7);
  CHECK(f[2] == doctest::Approx((1.0 + g) * h).epsilon(1e-13));
}

TEST_CASE("noisy evaluations perturb but stay reproducible by seed") {
  const std::vector<double> x = {0.2, 0.7, 0.55, 0.5, 0.45, 0.6, 0.5};
  for (const auto& name : registry_names()) {
    const UncertainProblem p = make(name.c_str(), true);
    const auto f1 = eval(p, x, 9);
    const auto f2 = eval(p, x, 9);
    const auto f3 = eval(p, x, 10);
    CHECK(f1 == f2);
    CHECK(f1 != f3);
  }
}

TEST_CASE("population evaluation fills sorted per-objective samples") {
  const UncertainProblem p = make("udtlz2", true);
  const std::vector<double> x = {0.2, 0.7, 0.55, 0.5, 0.45, 0.6, 0.5};
  RandomStream rs(21);
  const EvaluationResult res = evaluate_population(p, x, 40, rs);
  REQUIRE(res.raw.size() == 3);
  REQUIRE(res.populations.size() == 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(res.raw[j].size() == 40);
    CHECK(std::is_sorted(res.populations[j].values.begin(),
                         res.populations[j].values.end()));
    // same multiset, different order
    std::vector<double> sorted = res.raw[j];
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == res.populations[j].values);
  }
  RandomStream rs2(22);
  CHECK(code_of([&] { evaluate_population(p, x, 0, rs2); }) ==
        ErrorCode::InvalidPopulation);
}

TEST_CASE("stddev switch widens the fold-family noise") {
  // variance mode uses (10+i)/1000 directly; stddev mode squares it, so
  // the stddev-mode spread must be far smaller
  const std::vector<double> x(7, 0.5);
  ProblemOptions var_mode;
  var_mode.noise = true;
  ProblemOptions sd_mode = var_mode;
  sd_mode.stddev_noise = true;
  const UncertainProblem pv = registry_lookup("udtlz6", var_mode);
  const UncertainProblem ps = registry_lookup("udtlz6", sd_mode);
  RandomStream rv(3);
  RandomStream rs(3);
  double dev_v = 0.0;
  double dev_s = 0.0;
  for (int i = 0; i < 200; ++i) {
    dev_v += std::fabs(evaluate_once(pv, x, rv)[0] - 0.5);
    dev_s += std::fabs(evaluate_once(ps, x, rs)[0] - 0.5);
  }
  CHECK(dev_s < dev_v);
}

TEST_SUITE_END();
