#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <vector>

#include "core/metrics.hpp"
#include "doctest.h"

using namespace umo;

namespace {

FrontPoint pt(std::vector<double> f) {
  FrontPoint p;
  p.f = std::move(f);
  return p;
}

FrontPoint pt(std::vector<double> f, std::vector<double> lo,
              std::vector<double> hi) {
  FrontPoint p;
  p.f = std::move(f);
  p.lo = std::move(lo);
  p.hi = std::move(hi);
  return p;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::None;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("crisp dominance and front extraction") {
  CHECK(crisp_dominates(std::vector{1.0, 2.0}, std::vector{2.0, 2.0}));
  CHECK(crisp_dominates(std::vector{1.0, 2.0}, std::vector{1.0, 2.0}) == false);
  CHECK(crisp_dominates(std::vector{1.0, 3.0}, std::vector{2.0, 2.0}) == false);

  const std::vector<FrontPoint> pts = {pt({1, 3}), pt({3, 1}), pt({2, 2}),
                                       pt({3, 3}), pt({1, 3})};
  const auto front = crisp_front(pts);
  REQUIRE(front.size() == 3);  // (3,3) dominated, duplicate (1,3) collapsed
  CHECK(front[0].f == std::vector<double>{1, 3});
  CHECK(front[1].f == std::vector<double>{3, 1});
  CHECK(front[2].f == std::vector<double>{2, 2});

  CHECK(code_of([] {
          crisp_front({pt({1.0, 2.0}), pt({1.0})});
        }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] {
          crisp_front({pt({1.0, std::nan("")})});
        }) == ErrorCode::IndicatorDomainError);
}

TEST_CASE("scaled epsilon on frozen cases and identities") {
  const std::vector<FrontPoint> ref = {pt({1, 2})};
  const std::vector<FrontPoint> approx = {pt({2, 4})};
  CHECK(epsilon_multiplicative(approx, ref) == doctest::Approx(2.0));
  CHECK(epsilon_additive(approx, ref) == doctest::Approx(2.0));

  const std::vector<FrontPoint> f = {pt({1, 3}), pt({3, 1}), pt({2, 2})};
  CHECK(epsilon_multiplicative(f, f) == doctest::Approx(1.0));
  CHECK(epsilon_additive(f, f) == doctest::Approx(0.0));

  // the worst reference point drives the value
  const std::vector<FrontPoint> two_ref = {pt({1, 1}), pt({4, 4})};
  const std::vector<FrontPoint> one = {pt({2, 2})};
  CHECK(epsilon_multiplicative(one, two_ref) == doctest::Approx(2.0));

  // scaled epsilon refuses nonpositive coordinates
  CHECK(code_of([] {
          epsilon_multiplicative({pt({-1.0, 2.0})}, {pt({1.0, 1.0})});
        }) == ErrorCode::IndicatorDomainError);
  CHECK(epsilon_additive({pt({-1.0, 2.0})}, {pt({1.0, 1.0})}) ==
        doctest::Approx(1.0));
  CHECK(code_of([] {
          epsilon_multiplicative({}, {pt({1.0, 1.0})});
        }) == ErrorCode::IndicatorDomainError);
}

TEST_CASE("grid diversity score on frozen cases") {
  const std::vector<FrontPoint> f = {pt({1, 3}), pt({3, 1}), pt({2, 2})};
  CHECK(dci(f, f, 10) == doctest::Approx(1.0));

  // one approximation cell, maximally far from the one reference cell
  CHECK(dci({pt({0, 0})}, {pt({1, 1})}, 2) == doctest::Approx(0.0));

  // a flat dimension collapses instead of dividing by zero
  CHECK(dci({pt({0, 5})}, {pt({1, 5})}, 2) == doctest::Approx(0.0));
  CHECK(dci({pt({1, 5})}, {pt({1, 5})}, 2) == doctest::Approx(1.0));

  // halfway case: distance 1 cell of a possible 2 in one dimension
  const double mid = dci({pt({0.5, 0.0})}, {pt({0.0, 0.0}), pt({1.0, 0.0})}, 3);
  CHECK(mid == doctest::Approx(0.5));

  CHECK(code_of([&] { dci(f, f, 0); }) == ErrorCode::Config);
}

TEST_CASE("diagonal distance averages the per-point spread length") {
  const std::vector<FrontPoint> pts = {pt({1, 1}, {0, 0}, {3, 4}),
                                       pt({2, 2}, {1, 1}, {1, 1})};
  CHECK(diagonal_distance(pts) == doctest::Approx(2.5));  // (5 + 0) / 2
  CHECK(diagonal_distance({pt({1, 1}, {1, 1}, {1, 1})}) == doctest::Approx(0.0));
  CHECK(code_of([] { diagonal_distance({pt({1.0, 1.0})}); }) ==
        ErrorCode::MissingBounds);
  CHECK(code_of([] { diagonal_distance({}); }) ==
        ErrorCode::IndicatorDomainError);
}

TEST_CASE("lower median conventions") {
  CHECK(lower_median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(lower_median({4.0, 1.0, 3.0, 2.0}) == 2.0);
  CHECK(lower_median({5.0}) == 5.0);
  CHECK(code_of([] { lower_median({}); }) == ErrorCode::NoRuns);

  const std::vector<double> finals = {0.5, 0.1, 0.9};
  CHECK(median_run_index(finals) == 0);
  const std::vector<double> tied = {0.5, 0.5, 0.5, 0.5};
  CHECK(median_run_index(tied) == 1);  // stable order, lower median slot
}

TEST_CASE("reference building pools final fronts and is idempotent") {
  const std::vector<FrontPoint> a = {pt({1, 3}), pt({3, 1})};
  const std::vector<FrontPoint> b = {pt({2, 2}), pt({3, 3})};
  const auto ref = build_reference_front({a, b});
  REQUIRE(ref.size() == 3);
  const auto again = build_reference_front({ref});
  REQUIRE(again.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again[i].f == ref[i].f);
  CHECK(code_of([] { build_reference_front({}); }) == ErrorCode::EmptyReference);
}

TEST_CASE("front CSVs round-trip") {
  namespace fs = std::filesystem;
  const auto path = (fs::temp_directory_path() / "umo_front_test.csv").string();
  const std::vector<FrontPoint> front = {pt({0.30000000000000004, 2e-7}),
                                         pt({1.5, 0.25})};
  write_front_csv(path, front);
  const auto back = read_front_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].f == front[0].f);
  CHECK(back[1].f == front[1].f);
  std::remove(path.c_str());
}

TEST_SUITE_END();
