#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqec/manifest.hpp"
#include "cqec/montecarlo.hpp"

namespace cqec {

/// Writes the edge-list CSV for a catalog code and returns the stats block.
std::string build_graph_command(const std::string& code_id,
                                const std::filesystem::path& out_path);

/// Runs trajectory index 0 of the config and writes trajectory.csv,
/// metrics_per_string.csv, metrics_per_class.csv, truth_path.csv,
/// policy.json and manifest.json under out_dir. Returns the manifest.
RunManifest trajectory_command(const ExperimentConfig& config,
                               const std::filesystem::path& out_dir);

/// Runs one ensemble per experiment point and writes summary_<k>.csv per
/// point, report.json, and manifest.json (last) under out_dir.
RunManifest ensemble_command(const std::vector<ExperimentConfig>& points,
                             std::uint64_t master_seed,
                             const std::filesystem::path& out_dir);

/// Expands a config JSON into experiment points: array-valued kappa fields
/// fan out into one point each, with per-point seeds derived from the master
/// seed. Accepts both plain configs and previously written manifests.
struct ExperimentPlan {
  std::vector<ExperimentConfig> points;
  std::uint64_t master_seed = 0;
};
ExperimentPlan plan_from_json(const nlohmann::json& j);
ExperimentPlan load_plan(const std::filesystem::path& config_path);

/// Seed for point `index` under a master seed (identity for index 0 of a
/// single-point plan).
std::uint64_t derive_point_seed(std::uint64_t master_seed, std::size_t index,
                                std::size_t total_points);

}  // namespace cqec
