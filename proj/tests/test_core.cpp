#include <cmath>
#include <string>
#include <vector>

#include "core/rng.hpp"
#include "core/special.hpp"
#include "core/text.hpp"
#include "doctest.h"

using namespace umo;

TEST_SUITE_BEGIN("core");

TEST_CASE("numbers format to their shortest round-trip form") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5e-7) == "-2.5e-07");
  CHECK(format_int(42) == "42");
  CHECK(format_int(-9) == "-9");

  const double values[] = {0.0, 1.0 / 3.0, 6.02214076e23, -0.0001,
                           0.025510204081632654};
  for (double v : values) CHECK(parse_double(format_double(v)) == v);
}

TEST_CASE("parsing rejects junk with a parse error") {
  CHECK_THROWS_AS(parse_double("abc"), Error);
  CHECK_THROWS_AS(parse_double("1.5x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
  CHECK_THROWS_AS(parse_int("1.5"), Error);
  try {
    parse_double("nope");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("trim and split behave on edges") {
  CHECK(trim("  a b \t") == "a b");
  CHECK(trim("") == "");
  const auto parts = split("a,,b", ',');
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "");
  CHECK(parts[2] == "b");
}

TEST_CASE("random streams are reproducible and seed-sensitive") {
  RandomStream a(123);
  RandomStream b(123);
  RandomStream c(124);
  bool all_equal = true;
  bool any_diff_to_c = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01();
    all_equal = all_equal && x == b.uniform01();
    any_diff_to_c = any_diff_to_c || x != c.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_diff_to_c);
}

TEST_CASE("integer draws cover both inclusive endpoints") {
  RandomStream rs(7);
  bool saw_lo = false;
  bool saw_hi = false;
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t v = rs.uniform_int(3, 12);
    CHECK(v >= 3);
    CHECK(v <= 12);
    saw_lo = saw_lo || v == 3;
    saw_hi = saw_hi || v == 12;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
}

TEST_CASE("gaussian and beta draws land on their moments") {
  RandomStream rs(99);
  const int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = rs.gaussian(2.0, 0.25);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.01));
  CHECK(sq / n - mean * mean == doctest::Approx(0.25).epsilon(0.05));

  sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rs.beta(2.0, 5.0);
  CHECK(sum / n == doctest::Approx(2.0 / 7.0).epsilon(0.01));
}

TEST_CASE("mix derives distinct child seeds") {
  CHECK(RandomStream::mix(1, 1) != RandomStream::mix(1, 2));
  CHECK(RandomStream::mix(1, 1) != RandomStream::mix(2, 1));
  CHECK(RandomStream::mix(5, 9) == RandomStream::mix(5, 9));
}

TEST_CASE("erf matches reference values") {
  CHECK(erf_approx(0.0) == 0.0);
  CHECK(erf_approx(0.5) == doctest::Approx(0.5204998778130465).epsilon(1e-12));
  CHECK(erf_approx(1.0) == doctest::Approx(0.8427007929497148).epsilon(1e-12));
  CHECK(erf_approx(1.5) == doctest::Approx(0.9661051464753108).epsilon(1e-12));
  CHECK(erf_approx(-1.0) == doctest::Approx(-0.8427007929497148).epsilon(1e-12));
  CHECK(erf_approx(10.0) == doctest::Approx(1.0));
}

TEST_CASE("normal quantile matches reference values") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0));
  CHECK(normal_quantile(0.25) ==
        doctest::Approx(-0.6744897501960817).epsilon(1e-12));
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(normal_quantile(0.01) ==
        doctest::Approx(-2.3263478740408408).epsilon(1e-12));
  CHECK(normal_quantile(1e-6) ==
        doctest::Approx(-4.753424308822899).epsilon(1e-10));
  // round trip through the cdf
  for (double p : {0.001, 0.1, 0.3, 0.77, 0.999})
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("regularized incomplete beta matches reference values") {
  CHECK(beta_cdf(2.5, 1.5, 0.3) ==
        doctest::Approx(0.08894372317066562).epsilon(1e-10));
  CHECK(beta_cdf(2.0, 5.0, 2.0 / 7.0) ==
        doctest::Approx(0.548444950658314).epsilon(1e-10));
  CHECK(beta_cdf(1.0, 9.0, 0.1) ==
        doctest::Approx(0.6125795110000001).epsilon(1e-10));
  CHECK(beta_cdf(0.5, 0.5, 0.25) ==
        doctest::Approx(0.33333333333333337).epsilon(1e-10));
  CHECK(beta_cdf(6.0, 2.0, 0.8) == doctest::Approx(0.5767168).epsilon(1e-10));
  CHECK(beta_cdf(3.0, 3.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta_cdf(2.0, 5.0, 0.0) == 0.0);
  CHECK(beta_cdf(2.0, 5.0, 1.0) == 1.0);
}

TEST_CASE("beta quantile inverts the cdf") {
  CHECK(beta_quantile(2.0, 5.0, 0.5) ==
        doctest::Approx(0.26444998329566005).epsilon(1e-9));
  CHECK(beta_quantile(2.0, 5.0, 0.025) ==
        doctest::Approx(0.043271868292741676).epsilon(1e-9));
  CHECK(beta_quantile(2.0, 5.0, 0.975) ==
        doctest::Approx(0.6412345789976748).epsilon(1e-9));
  CHECK(beta_quantile(1.0, 9.0, 0.99) ==
        doctest::Approx(0.40051574968105896).epsilon(1e-9));
  CHECK(beta_quantile(3.0, 2.0, 0.5) ==
        doctest::Approx(0.6142724318676105).epsilon(1e-9));
  for (double p : {0.01, 0.2, 0.5, 0.9})
    CHECK(beta_cdf(2.0, 3.0, beta_quantile(2.0, 3.0, p)) ==
          doctest::Approx(p).epsilon(1e-9));
}

TEST_SUITE_END();
