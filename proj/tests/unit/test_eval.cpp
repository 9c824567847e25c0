#include "octrack/eval.hpp"

#include <nlohmann/json.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace octrack;

TEST_CASE("mean_abs_error basics") {
  ArrayXd truth(3);
  truth << 1.0, 1.0, 1.0;

  SUBCASE("identical sequences") { CHECK(mean_abs_error(truth, truth) == 0.0); }
  SUBCASE("constant offset") {
    const ArrayXd est = truth + 1.0;
    CHECK(mean_abs_error(est, truth) == 1.0);
  }
  SUBCASE("hand-computed mix") {
    ArrayXd est(3);
    est << 1.0, 2.0, 4.0;
    CHECK(mean_abs_error(est, truth) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("length mismatch and empty input") {
    ArrayXd est(2);
    est << 1.0, 2.0;
    CHECK_THROWS_AS(mean_abs_error(est, truth), std::invalid_argument);
    CHECK_THROWS_AS(mean_abs_error(ArrayXd(), ArrayXd()), std::invalid_argument);
  }
}

TEST_CASE("px_to_um applies the pixel pitch") {
  const EvalConfig cfg;
  CHECK(px_to_um(0.36, cfg) == doctest::Approx(0.9396).epsilon(1e-12));
  CHECK(px_to_um(0.28, cfg) == doctest::Approx(0.7308).epsilon(1e-12));
  CHECK(px_to_um(0.89, cfg) == doctest::Approx(2.3229).epsilon(1e-12));
  CHECK(px_to_um(0.54, cfg) == doctest::Approx(1.4094).epsilon(1e-12));
}

TEST_CASE("reduction_pct reproduces the reference reductions") {
  CHECK(std::abs(reduction_pct(0.89, 0.36) - 59.55) < 0.01);
  CHECK(std::abs(reduction_pct(0.54, 0.28) - 48.15) < 0.01);
  CHECK(reduction_pct(3.7, 3.7) == 0.0);
  CHECK_THROWS_AS(reduction_pct(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(reduction_pct(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("reduction_pct is scale-invariant") {
  std::mt19937_64 rng(121);
  std::uniform_real_distribution<double> mag(0.01, 10.0);
  for (int i = 0; i < 100; ++i) {
    const double a = mag(rng);
    const double b = mag(rng);
    const double c = mag(rng);
    CHECK(reduction_pct(a, b) == doctest::Approx(reduction_pct(c * a, c * b)).epsilon(1e-10));
  }
}

TEST_CASE("mae is invariant under a common shift") {
  std::mt19937_64 rng(212);
  std::uniform_real_distribution<double> value(0.0, 500.0);
  ArrayXd est(64), truth(64);
  for (Index i = 0; i < 64; ++i) {
    est[i] = value(rng);
    truth[i] = value(rng);
  }
  const double base = mean_abs_error(est, truth);
  CHECK(mean_abs_error(est + 113.5, truth + 113.5) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("jaggedness measures the mean absolute first difference") {
  SUBCASE("constant trace") {
    CHECK(jaggedness(ArrayXd::Constant(100, 7.0)) == 0.0);
  }
  SUBCASE("unit alternation") {
    ArrayXd alt(100);
    for (Index i = 0; i < 100; ++i) alt[i] = static_cast<double>(i % 2);
    CHECK(jaggedness(alt) == 1.0);
  }
  SUBCASE("linear ramp") {
    const double slope = -0.375;
    ArrayXd ramp = ArrayXd::LinSpaced(50, 0.0, slope * 49.0);
    CHECK(jaggedness(ramp) == doctest::Approx(std::abs(slope)).epsilon(1e-12));
  }
  SUBCASE("too short") {
    CHECK_THROWS_AS(jaggedness(ArrayXd::Constant(1, 0.0)), std::invalid_argument);
  }
}

TEST_CASE("compare_layer pairs reports with their reduction") {
  const EvalConfig cfg;
  ArrayXd truth = ArrayXd::Constant(200, 150.0);

  SUBCASE("identical traces give zero reduction") {
    const ArrayXd est = truth + 0.5;
    const LayerComparison cmp = compare_layer(est, est, truth, LayerId::DM, cfg);
    CHECK(cmp.reduction_pct == 0.0);
    CHECK(cmp.raw.mae_px == cmp.kdh.mae_px);
  }
  SUBCASE("reference error pair") {
    // Construct traces whose MAEs are exactly 0.89 and 0.36.
    ArrayXd raw = truth + 0.89;
    ArrayXd kdh = truth - 0.36;
    const LayerComparison cmp = compare_layer(raw, kdh, truth, LayerId::Epithelium, cfg);
    CHECK(cmp.raw.mae_px == doctest::Approx(0.89).epsilon(1e-12));
    CHECK(cmp.kdh.mae_px == doctest::Approx(0.36).epsilon(1e-12));
    CHECK(std::abs(cmp.reduction_pct - 59.55) < 0.01);
    CHECK(cmp.raw.mae_um == cmp.raw.mae_px * cfg.um_per_px);
    CHECK(cmp.kdh.n_columns == 200);
  }
}

TEST_CASE("comparison json carries the report keys") {
  const EvalConfig cfg;
  ArrayXd truth = ArrayXd::Constant(64, 100.0);
  ArrayXd raw = truth + 0.54;
  ArrayXd kdh = truth + 0.28;
  const LayerComparison cmp = compare_layer(raw, kdh, truth, LayerId::DM, cfg);

  const nlohmann::json doc = comparison_json(std::vector<LayerComparison>{cmp}, cfg);
  CHECK(doc["um_per_px"] == 2.61);
  REQUIRE(doc["layers"].size() == 1);
  const auto& layer = doc["layers"][0];
  CHECK(layer["layer"] == "dm");
  CHECK(layer["raw"].contains("mae_px"));
  CHECK(layer["raw"].contains("mae_um"));
  CHECK(layer["kdh"].contains("jaggedness_px"));
  CHECK(layer["kdh"].contains("n_columns"));
  CHECK(std::abs(layer["reduction_pct"].get<double>() - 48.15) < 0.01);

  const std::string table = comparison_table(std::vector<LayerComparison>{cmp}, cfg);
  CHECK(table.find("KDH") != std::string::npos);
  CHECK(table.find("Raw") != std::string::npos);
  CHECK(table.find("48.15") != std::string::npos);
}
