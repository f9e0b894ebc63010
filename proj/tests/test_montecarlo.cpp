#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqec/errors.hpp"
#include "cqec/montecarlo.hpp"

using cqec::ExperimentConfig;
using cqec::ExperimentContext;
using cqec::MetricMode;

namespace {

ExperimentConfig small_bitflip_config() {
  ExperimentConfig config;
  config.code_id = "bitflip3";
  config.gamma = 1.0;
  config.kappa_over_gamma = 40.0;
  config.horizon = 0.05;
  config.trajectories = 4;
  config.seed = 321;
  config.emit_stride = 100;
  return config;
}

}  // namespace

TEST_CASE("config parsing and field validation") {
  nlohmann::json j = {{"code", "bitflip3"},
                      {"kappa_over_gamma", 40.0},
                      {"horizon", 1.0},
                      {"trajectories", 10},
                      {"seed", 7},
                      {"metric_mode", "per_string"}};
  ExperimentConfig config = cqec::config_from_json(j);
  CHECK(config.code_id == "bitflip3");
  CHECK(config.kappa_over_gamma == doctest::Approx(40.0));
  CHECK(config.metric_mode == MetricMode::kPerString);

  CHECK_THROWS_WITH_AS(cqec::config_from_json({{"frobnicate", 1}}),
                       doctest::Contains("frobnicate"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      cqec::config_from_json({{"metric_mode", "per_widget"}}),
      doctest::Contains("metric_mode"), std::invalid_argument);
}

TEST_CASE("config resolution applies the grid policy") {
  ExperimentConfig config = small_bitflip_config();
  ExperimentContext context = prepare_experiment(config);
  CHECK(context.code.kappa == doctest::Approx(40.0));
  CHECK(context.dt <= 1e-3 / 40.0 + 1e-15);
  CHECK(context.steps * context.dt == doctest::Approx(0.05));
  CHECK(context.mode == MetricMode::kPerString);  // classes are trivial

  config.dt = 1.0;  // violates kappa*dt <= 1e-3
  CHECK_THROWS_WITH_AS(prepare_experiment(config), doctest::Contains("dt"),
                       std::invalid_argument);

  config = small_bitflip_config();
  config.kappa = 40.0;  // now two kappa fields are set
  CHECK_THROWS_WITH_AS(prepare_experiment(config),
                       doctest::Contains("kappa"), std::invalid_argument);

  config = small_bitflip_config();
  config.horizon.reset();
  CHECK_THROWS_WITH_AS(prepare_experiment(config),
                       doctest::Contains("horizon"), std::invalid_argument);
}

TEST_CASE("horizon shorthand in units of the total rate") {
  ExperimentConfig config;
  config.code_id = "five_qubit";
  config.kappa_over_total = 10.0;
  config.horizon_over_total = 1.0;
  config.trajectories = 1;
  ExperimentContext context = prepare_experiment(config);
  CHECK(context.code.kappa == doctest::Approx(150.0));
  CHECK(context.horizon == doctest::Approx(1.0 / 15.0));
  CHECK(context.mode == MetricMode::kPerClass);  // nontrivial cosets
}

TEST_CASE("trajectories are reproducible bit for bit") {
  ExperimentContext context = prepare_experiment(small_bitflip_config());
  cqec::TrajectoryResult a = run_trajectory(context, 2);
  cqec::TrajectoryResult b = run_trajectory(context, 2);
  CHECK(a.bound_string == b.bound_string);
  CHECK(a.p_star_class == b.p_star_class);
  CHECK(a.truth_terminal == b.truth_terminal);
  CHECK(a.correction_optimal == b.correction_optimal);

  cqec::TrajectoryResult c = run_trajectory(context, 3);
  CHECK(a.bound_string != c.bound_string);
}

TEST_CASE("zero error rate keeps full information and always recovers") {
  ExperimentConfig config;
  config.code_id = "bitflip3";
  config.gamma = 0.0;
  config.kappa = 40.0;
  config.horizon = 0.01;
  config.trajectories = 3;
  ExperimentContext context = prepare_experiment(config);
  for (int i = 0; i < 3; ++i) {
    cqec::TrajectoryResult result = run_trajectory(context, i);
    for (double j : result.bound_string) CHECK(j == doctest::Approx(1.0));
    for (double p : result.p_star_string) CHECK(p == doctest::Approx(1.0));
    CHECK(result.naive_success);
    CHECK(result.optimal_success);
  }
}

TEST_CASE("ensemble of one equals the single trajectory") {
  ExperimentConfig config = small_bitflip_config();
  config.trajectories = 1;
  ExperimentContext context = prepare_experiment(config);
  cqec::TrajectoryResult single = run_trajectory(context, 0);
  cqec::EnsembleSummary summary = run_ensemble(context);
  CHECK(summary.completed == 1);
  CHECK(summary.times == single.times);
  CHECK(summary.bound_string.mean == single.bound_string);
  for (double se : summary.bound_string.standard_error) CHECK(se == 0.0);
  CHECK(summary.naive_successes == (single.naive_success ? 1 : 0));
}

TEST_CASE("summaries are independent of the worker count") {
  ExperimentConfig config = small_bitflip_config();
  config.trajectories = 6;
  cqec::EnsembleSummary serial, parallel2, parallel3;
  {
    config.workers = 1;
    serial = run_ensemble(prepare_experiment(config));
  }
  {
    config.workers = 2;
    parallel2 = run_ensemble(prepare_experiment(config));
  }
  {
    config.workers = 3;
    parallel3 = run_ensemble(prepare_experiment(config));
  }
  CHECK(serial.bound_string.mean == parallel2.bound_string.mean);
  CHECK(serial.bound_string.standard_error ==
        parallel2.bound_string.standard_error);
  CHECK(serial.p_star_class.mean == parallel3.p_star_class.mean);
  CHECK(serial.naive_successes == parallel2.naive_successes);
  CHECK(serial.optimal_successes == parallel3.optimal_successes);
  CHECK(serial.completed + serial.failed == 6);
}

TEST_CASE("an unusable chain fails every trajectory and is reported") {
  ExperimentContext context = prepare_experiment(small_bitflip_config());
  context.chain.obs_levels.setConstant(
      std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(run_ensemble(context), cqec::NumericalFailure);
}

TEST_CASE("summary CSV uses the configured metric mode") {
  ExperimentConfig config = small_bitflip_config();
  config.trajectories = 2;
  cqec::EnsembleSummary summary = run_ensemble(prepare_experiment(config));
  std::string csv = summary.to_csv();
  CHECK(csv.rfind("t,mean_J,se_J,mean_pstar,se_pstar\n", 0) == 0);
}
