#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqec/chain.hpp"
#include "cqec/codes.hpp"
#include "cqec/metrics.hpp"

namespace cqec {

/// One experiment point. Exactly one of kappa / kappa_over_gamma /
/// kappa_over_total must be set; exactly one of horizon /
/// horizon_over_total. Times and rates share one time unit (gamma defaults
/// to 1 per unit time, so horizons are effectively in units of 1/gamma).
struct ExperimentConfig {
  std::string code_id = "bitflip3";
  double gamma = 1.0;
  std::optional<double> kappa;
  std::optional<double> kappa_over_gamma;
  std::optional<double> kappa_over_total;  // kappa / Gamma
  std::optional<double> dt;  // default: kappa*dt <= 1e-3 and gamma*dt <= 1e-4
  std::optional<double> horizon;
  std::optional<double> horizon_over_total;  // T = x / Gamma
  int trajectories = 50;
  std::uint64_t seed = 0;
  int emit_stride = 100;
  std::optional<MetricMode> metric_mode;  // default: per-class iff classes
                                          // are nontrivial (five_qubit)
  int workers = 1;
};

ExperimentConfig config_from_json(const nlohmann::json& j);

/// Immutable shared context for one experiment point: resolved parameters
/// plus the graphs and chains every trajectory worker reads.
struct ExperimentContext {
  StabilizerCode code;
  ErrorGraph graph;       // extended correction chain
  JumpChain chain;
  ErrorGraph syn_graph;   // syndrome chain (naive policy)
  JumpChain syn_chain;
  double dt = 0.0;
  int steps = 0;
  double horizon = 0.0;
  int emit_stride = 1;
  MetricMode mode = MetricMode::kPerString;
  std::uint64_t seed = 0;
  int trajectories = 0;
  int workers = 1;

  nlohmann::json resolved_json() const;
};

/// Validates and resolves a config (grid policy, rate shorthands, metric
/// mode). Throws std::invalid_argument naming the offending field.
ExperimentContext prepare_experiment(const ExperimentConfig& config);

/// Everything recorded about one simulated trajectory. Metric series are
/// sampled on the emission grid; per-string and per-class variants are both
/// kept (they coincide when every class is a single string).
struct TrajectoryResult {
  int index = 0;
  bool failed = false;
  std::string failure;
  std::vector<double> times;
  std::vector<double> bound_string, p_star_string;
  std::vector<double> bound_class, p_star_class;
  PauliString truth_terminal;
  PauliString correction_naive;
  PauliString correction_optimal;  // in the configured mode
  bool naive_success = false;
  bool optimal_success = false;
  bool optimal_success_string = false;
  bool optimal_success_class = false;
  long clip_events = 0;
  double max_bound_step_increase = 0.0;  // over raw steps, configured mode
};

/// Full pipeline for one trajectory index: sample the truth path, synthesize
/// the truth-driven record, run the extended and syndrome filters, score both
/// policies at the horizon. Deterministic given (seed, index).
TrajectoryResult run_trajectory(const ExperimentContext& context, int index);

struct SeriesSummary {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

struct EnsembleSummary {
  std::vector<double> times;
  SeriesSummary bound_string, p_star_string;
  SeriesSummary bound_class, p_star_class;
  /// Terminal bound of each completed trajectory (configured mode), in
  /// trajectory-index order; supports paired comparisons across experiments
  /// run under a common seed.
  std::vector<double> terminal_bounds;
  MetricMode mode = MetricMode::kPerString;
  int completed = 0;
  int failed = 0;
  long naive_successes = 0;
  long optimal_successes = 0;  // configured mode
  long optimal_string_successes = 0;
  long optimal_class_successes = 0;
  long clip_events = 0;
  double max_bound_step_increase = 0.0;

  double naive_success_rate() const;
  double optimal_success_rate() const;

  /// Summary CSV `t,mean_J,se_J,mean_pstar,se_pstar` in the configured mode.
  std::string to_csv() const;
};

/// Runs all trajectories over a worker pool and aggregates them in strict
/// index order, so the summary is bit-identical for any worker count. Failed
/// trajectories are excluded from means and counted; throws if every
/// trajectory failed.
EnsembleSummary run_ensemble(const ExperimentContext& context);

}  // namespace cqec
