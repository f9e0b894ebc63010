#include "cqec/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cqec/errors.hpp"
#include "cqec/signal.hpp"
#include "cqec/stats.hpp"

namespace cqec {

namespace {

constexpr double kKappaDtBound = 1e-3;
constexpr double kGammaDtBound = 1e-4;

[[noreturn]] void config_error(const std::string& field,
                               const std::string& message) {
  throw std::invalid_argument("config field '" + field + "': " + message);
}

std::string mode_name(MetricMode mode) {
  return mode == MetricMode::kPerString ? "per_string" : "per_class";
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  for (const auto& [k, v] : j.items()) {
    if (k == "code") {
      config.code_id = v.get<std::string>();
    } else if (k == "gamma") {
      config.gamma = v.get<double>();
    } else if (k == "kappa") {
      config.kappa = v.get<double>();
    } else if (k == "kappa_over_gamma") {
      config.kappa_over_gamma = v.get<double>();
    } else if (k == "kappa_over_total") {
      config.kappa_over_total = v.get<double>();
    } else if (k == "dt") {
      config.dt = v.get<double>();
    } else if (k == "horizon") {
      config.horizon = v.get<double>();
    } else if (k == "horizon_over_total") {
      config.horizon_over_total = v.get<double>();
    } else if (k == "trajectories") {
      config.trajectories = v.get<int>();
    } else if (k == "seed") {
      config.seed = v.get<std::uint64_t>();
    } else if (k == "emit_stride") {
      config.emit_stride = v.get<int>();
    } else if (k == "workers") {
      config.workers = v.get<int>();
    } else if (k == "steps") {
      // echo field in resolved configs; recomputed from horizon and dt
    } else if (k == "metric_mode") {
      std::string name = v.get<std::string>();
      if (name == "per_string") {
        config.metric_mode = MetricMode::kPerString;
      } else if (name == "per_class") {
        config.metric_mode = MetricMode::kPerClass;
      } else {
        config_error("metric_mode", "expected per_string or per_class");
      }
    } else {
      config_error(k, "unknown field");
    }
  }
  return config;
}

ExperimentContext prepare_experiment(const ExperimentConfig& config) {
  if (config.gamma < 0) config_error("gamma", "must be >= 0");
  if (config.trajectories < 1) config_error("trajectories", "must be >= 1");
  if (config.emit_stride < 1) config_error("emit_stride", "must be >= 1");

  int rate_fields = config.kappa.has_value() +
                    config.kappa_over_gamma.has_value() +
                    config.kappa_over_total.has_value();
  if (rate_fields != 1) {
    config_error("kappa",
                 "exactly one of kappa, kappa_over_gamma, kappa_over_total "
                 "must be set");
  }

  ExperimentContext context;
  context.code = code_by_id(config.code_id, config.gamma, 1.0);
  double kappa;
  if (config.kappa) {
    kappa = *config.kappa;
  } else if (config.kappa_over_gamma) {
    kappa = *config.kappa_over_gamma * config.gamma;
  } else {
    kappa = *config.kappa_over_total * context.code.total_rate();
  }
  if (kappa < 0) config_error("kappa", "must be >= 0");
  context.code.kappa = kappa;

  if (config.horizon.has_value() == config.horizon_over_total.has_value()) {
    config_error("horizon",
                 "exactly one of horizon, horizon_over_total must be set");
  }
  context.horizon = config.horizon
                        ? *config.horizon
                        : *config.horizon_over_total /
                              context.code.total_rate();
  if (!(context.horizon > 0)) config_error("horizon", "must be > 0");

  if (config.dt) {
    if (*config.dt <= 0) config_error("dt", "must be > 0");
    if (kappa * *config.dt > kKappaDtBound * (1 + 1e-9)) {
      config_error("dt", "grid policy requires kappa*dt <= 1e-3");
    }
    if (config.gamma * *config.dt > kGammaDtBound * (1 + 1e-9)) {
      config_error("dt", "grid policy requires gamma*dt <= 1e-4");
    }
    context.steps = static_cast<int>(
        std::ceil(context.horizon / *config.dt * (1 - 1e-12)));
    context.dt = *config.dt;
  } else {
    double dt = context.horizon;
    if (kappa > 0) dt = std::min(dt, kKappaDtBound / kappa);
    if (config.gamma > 0) dt = std::min(dt, kGammaDtBound / config.gamma);
    context.steps =
        static_cast<int>(std::ceil(context.horizon / dt * (1 - 1e-12)));
    context.dt = context.horizon / context.steps;
  }
  if (context.steps < 1) config_error("horizon", "shorter than one step");

  context.graph = build_error_graph(context.code);
  context.chain = chain_from_graph(context.graph, context.code);
  context.syn_graph = syndrome_chain(context.code);
  context.syn_chain = chain_from_graph(context.syn_graph, context.code);

  context.mode = config.metric_mode.value_or(
      context.graph.num_classes < context.graph.size()
          ? MetricMode::kPerClass
          : MetricMode::kPerString);
  context.seed = config.seed;
  context.trajectories = config.trajectories;
  context.emit_stride = config.emit_stride;
  context.workers = std::max(1, config.workers);
  return context;
}

nlohmann::json ExperimentContext::resolved_json() const {
  return nlohmann::json{{"code", code.id},
                        {"gamma", code.gamma},
                        {"kappa", code.kappa},
                        {"dt", dt},
                        {"steps", steps},
                        {"horizon", horizon},
                        {"trajectories", trajectories},
                        {"seed", seed},
                        {"emit_stride", emit_stride},
                        {"metric_mode", mode_name(mode)},
                        {"workers", workers}};
}

TrajectoryResult run_trajectory(const ExperimentContext& context, int index) {
  TrajectoryResult result;
  result.index = index;

  RngStream jump_rng = make_stream(context.seed, index, Substream::kJumps);
  RngStream noise_rng =
      make_stream(context.seed, index, Substream::kMeasurementNoise);

  const JumpChain& chain = context.chain;
  JumpPath path = sample_jump_path(chain, 0, context.steps * context.dt,
                                   jump_rng);
  MeasurementRecord record = truth_driven_record(path, chain, context.dt,
                                                 context.steps, noise_rng);

  Eigen::VectorXd p_ext = Eigen::VectorXd::Zero(chain.dim);
  p_ext[0] = 1.0;
  Eigen::VectorXd p_syn = Eigen::VectorXd::Zero(context.syn_chain.dim);
  p_syn[0] = 1.0;

  StepDiagnostics diagnostics;
  auto emit = [&](int step) {
    double t = step * context.dt;
    FilterState state{p_ext, t};
    InfoSnapshot per_string =
        info_bound(state, context.graph, MetricMode::kPerString);
    InfoSnapshot per_class =
        info_bound(state, context.graph, MetricMode::kPerClass);
    result.times.push_back(t);
    result.bound_string.push_back(per_string.bound);
    result.p_star_string.push_back(per_string.p_star);
    result.bound_class.push_back(per_class.bound);
    result.p_star_class.push_back(per_class.p_star);
  };

  try {
    emit(0);
    double previous_bound =
        context.mode == MetricMode::kPerString ? result.bound_string[0]
                                               : result.bound_class[0];
    for (int s = 1; s <= context.steps; ++s) {
      wonham_step_inplace(p_ext, chain, record.increments.row(s - 1),
                          context.dt, NormPolicy::kClipRenormalize,
                          &diagnostics, (s - 1) * context.dt);
      wonham_step_inplace(p_syn, context.syn_chain,
                          record.increments.row(s - 1), context.dt,
                          NormPolicy::kClipRenormalize, nullptr,
                          (s - 1) * context.dt);
      InfoSnapshot step_snapshot = info_bound({p_ext, s * context.dt},
                                              context.graph, context.mode);
      result.max_bound_step_increase =
          std::max(result.max_bound_step_increase,
                   step_snapshot.bound - previous_bound);
      previous_bound = step_snapshot.bound;
      if (s % context.emit_stride == 0 || s == context.steps) emit(s);
    }
  } catch (const NumericalFailure& failure) {
    result.failed = true;
    result.failure = failure.what();
    result.clip_events = diagnostics.clip_events;
    return result;
  }
  result.clip_events = diagnostics.clip_events;

  result.truth_terminal = context.graph.nodes[path.terminal_state()];
  result.correction_naive =
      naive_policy({p_syn, context.horizon}, context.graph);
  PauliString optimal_string = optimal_policy({p_ext, context.horizon},
                                              context.graph,
                                              MetricMode::kPerString);
  PauliString optimal_class = optimal_policy({p_ext, context.horizon},
                                             context.graph,
                                             MetricMode::kPerClass);
  result.correction_optimal = context.mode == MetricMode::kPerString
                                  ? optimal_string
                                  : optimal_class;
  result.naive_success =
      score_recovery(result.correction_naive, result.truth_terminal,
                     context.code);
  result.optimal_success_string =
      score_recovery(optimal_string, result.truth_terminal, context.code);
  result.optimal_success_class =
      score_recovery(optimal_class, result.truth_terminal, context.code);
  result.optimal_success = context.mode == MetricMode::kPerString
                               ? result.optimal_success_string
                               : result.optimal_success_class;
  return result;
}

namespace {

struct SeriesAccumulator {
  std::vector<RunningStats> stats;

  void add(const std::vector<double>& series) {
    if (stats.empty()) stats.resize(series.size());
    for (size_t i = 0; i < series.size(); ++i) stats[i].add(series[i]);
  }
  SeriesSummary summary() const {
    SeriesSummary s;
    for (const auto& r : stats) {
      s.mean.push_back(r.mean());
      s.standard_error.push_back(r.standard_error());
    }
    return s;
  }
};

}  // namespace

double EnsembleSummary::naive_success_rate() const {
  return completed > 0 ? static_cast<double>(naive_successes) / completed
                       : 0.0;
}

double EnsembleSummary::optimal_success_rate() const {
  return completed > 0 ? static_cast<double>(optimal_successes) / completed
                       : 0.0;
}

std::string EnsembleSummary::to_csv() const {
  const SeriesSummary& bound =
      mode == MetricMode::kPerString ? bound_string : bound_class;
  const SeriesSummary& p_star =
      mode == MetricMode::kPerString ? p_star_string : p_star_class;
  std::ostringstream out;
  out.precision(17);
  out << "t,mean_J,se_J,mean_pstar,se_pstar\n";
  for (size_t i = 0; i < times.size(); ++i) {
    out << times[i] << "," << bound.mean[i] << "," << bound.standard_error[i]
        << "," << p_star.mean[i] << "," << p_star.standard_error[i] << "\n";
  }
  return out.str();
}

EnsembleSummary run_ensemble(const ExperimentContext& context) {
  int total = context.trajectories;
  int workers = std::min(context.workers, total);

  SeriesAccumulator bound_string, p_star_string, bound_class, p_star_class;
  EnsembleSummary summary;
  summary.mode = context.mode;

  std::mutex mutex;
  std::condition_variable merged_cv;
  std::map<int, TrajectoryResult> pending;
  int next_to_merge = 0;

  auto merge_ready = [&](std::unique_lock<std::mutex>& lock) {
    while (!pending.empty() && pending.begin()->first == next_to_merge) {
      TrajectoryResult result = std::move(pending.begin()->second);
      pending.erase(pending.begin());
      lock.unlock();
      if (result.failed) {
        ++summary.failed;
      } else {
        ++summary.completed;
        if (summary.times.empty()) summary.times = result.times;
        summary.terminal_bounds.push_back(
            context.mode == MetricMode::kPerString
                ? result.bound_string.back()
                : result.bound_class.back());
        bound_string.add(result.bound_string);
        p_star_string.add(result.p_star_string);
        bound_class.add(result.bound_class);
        p_star_class.add(result.p_star_class);
        summary.naive_successes += result.naive_success;
        summary.optimal_successes += result.optimal_success;
        summary.optimal_string_successes += result.optimal_success_string;
        summary.optimal_class_successes += result.optimal_success_class;
        summary.clip_events += result.clip_events;
        summary.max_bound_step_increase =
            std::max(summary.max_bound_step_increase,
                     result.max_bound_step_increase);
      }
      lock.lock();
      ++next_to_merge;
      merged_cv.notify_all();
    }
  };

  if (workers <= 1) {
    std::unique_lock<std::mutex> lock(mutex);
    for (int i = 0; i < total; ++i) {
      lock.unlock();
      TrajectoryResult result = run_trajectory(context, i);
      lock.lock();
      pending.emplace(i, std::move(result));
      merge_ready(lock);
    }
  } else {
    std::atomic<int> next_index{0};
    // Aggregation happens in strict index order; workers stall once they run
    // too far ahead so the reorder buffer stays bounded.
    int window = 4 * workers;
    std::exception_ptr worker_error;
    auto work = [&]() {
      try {
        for (;;) {
          int i = next_index.fetch_add(1);
          if (i >= total) return;
          {
            std::unique_lock<std::mutex> lock(mutex);
            merged_cv.wait(lock, [&] {
              return i < next_to_merge + window || worker_error;
            });
            if (worker_error) return;
          }
          TrajectoryResult result = run_trajectory(context, i);
          std::unique_lock<std::mutex> lock(mutex);
          pending.emplace(i, std::move(result));
          merge_ready(lock);
        }
      } catch (...) {
        std::unique_lock<std::mutex> lock(mutex);
        worker_error = std::current_exception();
        merged_cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
  }

  if (summary.completed == 0) {
    throw NumericalFailure("all trajectories failed", context.horizon);
  }
  summary.bound_string = bound_string.summary();
  summary.p_star_string = p_star_string.summary();
  summary.bound_class = bound_class.summary();
  summary.p_star_class = p_star_class.summary();
  return summary;
}

}  // namespace cqec
