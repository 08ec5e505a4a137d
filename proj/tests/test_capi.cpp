#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "umo/umo.h"

TEST_SUITE_BEGIN("capi");

TEST_CASE("status names are stable strings") {
  CHECK(std::strcmp(umo_status_name(UMO_OK), "ok") == 0);
  CHECK(std::strcmp(umo_status_name(UMO_ERR_UNKNOWN_OPERATOR),
                    "unknown-operator") == 0);
  CHECK(std::strcmp(umo_status_name(UMO_ERR_DEGENERATE_VARIANCE),
                    "degenerate-variance") == 0);
}

TEST_CASE("value lifecycle and accessors") {
  umo_value* v = nullptr;
  REQUIRE(umo_value_from_spec("beta(2,5)", &v) == UMO_OK);
  double mean = 0.0;
  double variance = 0.0;
  CHECK(umo_value_mean(v, &mean) == UMO_OK);
  CHECK(mean == doctest::Approx(2.0 / 7.0));
  CHECK(umo_value_stats(v, &mean, &variance) == UMO_OK);
  CHECK(variance == doctest::Approx(0.025510204081632654));
  double lo = 0.0;
  double hi = 0.0;
  CHECK(umo_value_bounds(v, &lo, &hi) == UMO_OK);
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  double out = 0.0;
  CHECK(umo_value_cdf(v, 2.0 / 7.0, &out) == UMO_OK);
  CHECK(out == doctest::Approx(0.548444950658314));
  CHECK(umo_value_quantile(v, 0.5, &out) == UMO_OK);
  CHECK(out == doctest::Approx(0.26444998329566005));
  umo_value_free(v);

  umo_value* g = nullptr;
  REQUIRE(umo_value_from_spec("gaussian(0,1)", &g) == UMO_OK);
  CHECK(umo_value_bounds(g, &lo, &hi) == UMO_ERR_UNBOUNDED_SUPPORT);
  CHECK(std::strlen(umo_last_error()) > 0);
  umo_value_free(g);

  umo_value* bad = nullptr;
  CHECK(umo_value_from_spec("lognormal(0,1)", &bad) == UMO_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(umo_value_from_spec(nullptr, &bad) == UMO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("comparison through the flat interface") {
  umo_compare_options opts;
  umo_compare_options_init(&opts);
  CHECK(opts.gamma == 0.5);
  CHECK(opts.sense == UMO_MINIMIZE);

  umo_value* a = nullptr;
  umo_value* b = nullptr;
  REQUIRE(umo_value_from_spec("gaussian(1,1)", &a) == UMO_OK);
  REQUIRE(umo_value_from_spec("gaussian(0,1)", &b) == UMO_OK);
  umo_report rep{};
  REQUIRE(umo_compare(a, b, "gauss", &opts, &rep) == UMO_OK);
  CHECK(rep.p_greater == doctest::Approx(0.7602499389065233));
  CHECK(rep.p_less == doctest::Approx(1.0 - 0.7602499389065233));
  CHECK(rep.decision == UMO_DECISION_WORSE);  // larger mean, minimizing
  CHECK(std::strcmp(umo_decision_name(rep.decision), "worse") == 0);

  opts.sense = UMO_MAXIMIZE;
  REQUIRE(umo_compare(a, b, "gauss", &opts, &rep) == UMO_OK);
  CHECK(rep.decision == UMO_DECISION_BETTER);

  CHECK(umo_compare(a, b, "voodoo", &opts, &rep) == UMO_ERR_UNKNOWN_OPERATOR);
  // closed forms carry no draw order for pairing
  CHECK(umo_compare(a, b, "pw", &opts, &rep) == UMO_ERR_WRONG_REPRESENTATION);
  umo_value_free(a);
  umo_value_free(b);
}

TEST_CASE("sampled values keep their draw order across save and load") {
  const double draws[] = {0.9, 0.1, 0.5, 0.3};
  umo_value* v = nullptr;
  REQUIRE(umo_value_from_samples(draws, 4, &v) == UMO_OK);
  const auto path =
      (std::filesystem::temp_directory_path() / "umo_capi_samples.txt").string();
  REQUIRE(umo_value_save(v, path.c_str()) == UMO_OK);
  umo_value* back = nullptr;
  REQUIRE(umo_value_load(path.c_str(), &back) == UMO_OK);

  umo_compare_options opts;
  umo_compare_options_init(&opts);
  umo_report rep{};
  // identical draw order pairs each sample with itself: no strict wins
  REQUIRE(umo_compare(v, back, "pw", &opts, &rep) == UMO_OK);
  CHECK(rep.p_greater == 0.0);
  CHECK(rep.p_less == 0.0);
  CHECK(rep.decision == UMO_DECISION_INDIFFERENT);
  umo_value_free(v);
  umo_value_free(back);
  std::remove(path.c_str());
}

TEST_CASE("oracle integration is reachable") {
  double p = 0.0;
  REQUIRE(umo_oracle("uniform(0.1,1.1)", "uniform(0,1)", 100000, &p) == UMO_OK);
  CHECK(p == doctest::Approx(0.595).epsilon(1e-6));
}

TEST_CASE("driver argument validation surfaces typed errors") {
  CHECK(umo_metrics(nullptr, 0, "ref.csv", 10, "out.csv") ==
        UMO_ERR_INVALID_ARGUMENT);
  const char* no_files[] = {nullptr};
  CHECK(umo_metrics(no_files, 0, "ref.csv", 10, "out.csv") == UMO_ERR_NO_RUNS);

  umo_optimize_options oopts;
  umo_optimize_options_init(&oopts);
  CHECK(oopts.population == 25);
  CHECK(oopts.mutation_probability < 0.0);
  oopts.problem = "udtlz9";
  CHECK(umo_optimize(&oopts, nullptr, "/tmp/umo_capi_nowhere") ==
        UMO_ERR_UNKNOWN_PROBLEM);
}

TEST_SUITE_END();
