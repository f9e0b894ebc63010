#include "cqec/commands.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cqec/rng.hpp"
#include "cqec/signal.hpp"
#include "cqec/validate.hpp"

namespace cqec {

namespace {

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file " + path.string());
  }
  nlohmann::json j;
  in >> j;
  return j;
}

}  // namespace

std::string build_graph_command(const std::string& code_id,
                                const std::filesystem::path& out_path) {
  StabilizerCode code = code_by_id(code_id);
  ErrorGraph graph = build_error_graph(code);
  std::string csv = graph_to_csv(graph);
  write_file(out_path, csv);
  // The stats block is the CSV's comment header.
  std::istringstream in(csv);
  std::string stats, line;
  while (std::getline(in, line) && line.rfind("#", 0) == 0) {
    stats += line + "\n";
  }
  return stats;
}

std::uint64_t derive_point_seed(std::uint64_t master_seed, std::size_t index,
                                std::size_t total_points) {
  if (total_points <= 1) return master_seed;
  return philox4x64({static_cast<std::uint64_t>(index), 0, 0, 0},
                    {master_seed, 0x706f696e74ull})[0];
}

ExperimentPlan plan_from_json(const nlohmann::json& in) {
  nlohmann::json j = in;
  if (j.contains("tool_version") && j.contains("config")) {
    j = j.at("config");  // a previously written manifest
  }
  if (j.contains("points")) {
    ExperimentPlan plan;
    plan.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (const auto& point : j.at("points")) {
      plan.points.push_back(config_from_json(point));
    }
    return plan;
  }

  // Array-valued kappa fields fan out into one experiment point each.
  std::string list_key;
  for (const std::string key :
       {"kappa", "kappa_over_gamma", "kappa_over_total"}) {
    if (j.contains(key) && j.at(key).is_array()) {
      if (!list_key.empty()) {
        throw std::invalid_argument(
            "config: only one kappa field may be a list");
      }
      list_key = key;
    }
  }
  ExperimentPlan plan;
  if (list_key.empty()) {
    plan.points.push_back(config_from_json(j));
    plan.master_seed = plan.points[0].seed;
    return plan;
  }
  std::vector<double> values = j.at(list_key).get<std::vector<double>>();
  plan.master_seed = j.value("seed", std::uint64_t{0});
  for (std::size_t i = 0; i < values.size(); ++i) {
    nlohmann::json point = j;
    point[list_key] = values[i];
    point["seed"] = derive_point_seed(plan.master_seed, i, values.size());
    plan.points.push_back(config_from_json(point));
  }
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& config_path) {
  return plan_from_json(load_json(config_path));
}

namespace {

nlohmann::json policy_json(const TrajectoryResult& result,
                           const ExperimentContext& context) {
  return nlohmann::json{
      {"truth_terminal", to_string(result.truth_terminal)},
      {"correction_naive", to_string(result.correction_naive)},
      {"correction_optimal", to_string(result.correction_optimal)},
      {"naive_success", result.naive_success},
      {"optimal_success", result.optimal_success},
      {"optimal_success_per_string", result.optimal_success_string},
      {"optimal_success_per_class", result.optimal_success_class},
      {"metric_mode",
       context.mode == MetricMode::kPerString ? "per_string" : "per_class"},
      {"clip_events", result.clip_events}};
}

}  // namespace

RunManifest trajectory_command(const ExperimentConfig& config,
                               const std::filesystem::path& out_dir) {
  RunManifest manifest;
  manifest.command = "trajectory";
  manifest.started_at = current_timestamp();

  ExperimentContext context = prepare_experiment(config);
  manifest.resolved_config = {{"point", context.resolved_json()}};
  manifest.master_seed = context.seed;
  std::filesystem::create_directories(out_dir);

  // Same streams as ensemble trajectory index 0, so the two agree exactly.
  RngStream jump_rng = make_stream(context.seed, 0, Substream::kJumps);
  RngStream noise_rng =
      make_stream(context.seed, 0, Substream::kMeasurementNoise);
  JumpPath path = sample_jump_path(context.chain, 0,
                                   context.steps * context.dt, jump_rng);
  MeasurementRecord record = truth_driven_record(
      path, context.chain, context.dt, context.steps, noise_rng);

  FilterTrajectory filter_trajectory = run_filter(
      context.chain, Eigen::VectorXd::Unit(context.chain.dim, 0), record,
      context.emit_stride);
  std::vector<InfoSnapshot> per_string, per_class;
  for (std::size_t k = 0; k < filter_trajectory.states.size(); ++k) {
    FilterState state{filter_trajectory.states[k],
                      filter_trajectory.times[k]};
    per_string.push_back(
        info_bound(state, context.graph, MetricMode::kPerString));
    per_class.push_back(
        info_bound(state, context.graph, MetricMode::kPerClass));
  }

  TrajectoryResult result = run_trajectory(context, 0);

  write_output_file(out_dir, "trajectory.csv",
                    trajectory_to_csv(filter_trajectory), manifest);
  write_output_file(out_dir, "metrics_per_string.csv",
                    snapshots_to_csv(per_string), manifest);
  write_output_file(out_dir, "metrics_per_class.csv",
                    snapshots_to_csv(per_class), manifest);
  write_output_file(out_dir, "truth_path.csv", path_to_csv(path), manifest);
  write_output_file(out_dir, "policy.json",
                    policy_json(result, context).dump(2) + "\n", manifest);

  manifest.finished_at = current_timestamp();
  write_manifest(out_dir, manifest);
  return manifest;
}

RunManifest ensemble_command(const std::vector<ExperimentConfig>& points,
                             std::uint64_t master_seed,
                             const std::filesystem::path& out_dir) {
  if (points.empty()) {
    throw std::invalid_argument("ensemble requires at least one point");
  }
  RunManifest manifest;
  manifest.command = "ensemble";
  manifest.started_at = current_timestamp();
  manifest.master_seed = master_seed;
  std::filesystem::create_directories(out_dir);

  nlohmann::json point_configs = nlohmann::json::array();
  nlohmann::json report = nlohmann::json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    ExperimentContext context = prepare_experiment(points[i]);
    point_configs.push_back(context.resolved_json());
    EnsembleSummary summary = run_ensemble(context);
    std::string name = "summary_" + std::to_string(i) + ".csv";
    write_output_file(out_dir, name, summary.to_csv(), manifest);
    report.push_back(
        {{"point", i},
         {"summary", name},
         {"kappa", context.code.kappa},
         {"completed", summary.completed},
         {"failed", summary.failed},
         {"naive_successes", summary.naive_successes},
         {"optimal_successes", summary.optimal_successes},
         {"optimal_string_successes", summary.optimal_string_successes},
         {"optimal_class_successes", summary.optimal_class_successes},
         {"clip_events", summary.clip_events},
         {"max_bound_step_increase", summary.max_bound_step_increase}});
  }
  write_output_file(out_dir, "report.json", report.dump(2) + "\n", manifest);
  manifest.resolved_config = {{"master_seed", master_seed},
                              {"points", point_configs}};
  manifest.finished_at = current_timestamp();
  write_manifest(out_dir, manifest);
  return manifest;
}

}  // namespace cqec
