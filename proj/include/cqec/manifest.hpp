#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cqec {

inline constexpr std::string_view kToolVersion = "cqec 0.1.0";

/// FNV-1a 64-bit content digest. Not cryptographic; used to detect
/// reproduction mismatches between runs.
std::uint64_t fnv1a64(std::string_view bytes);
std::string file_digest_hex(const std::filesystem::path& path);

struct OutputRecord {
  std::string path;  // relative to the manifest directory
  std::string digest;
};

/// Provenance record for one CLI invocation: the fully resolved config, the
/// master seed, and a digest inventory of every file the run produced.
/// Re-running from the embedded config reproduces every digest.
struct RunManifest {
  std::string tool_version{kToolVersion};
  std::string command;
  nlohmann::json resolved_config;
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<OutputRecord> outputs;

  void record_output(const std::filesystem::path& out_dir,
                     const std::string& relative_path);
  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
};

std::string current_timestamp();

/// Writes bytes to out_dir/relative_path and records the digest.
void write_output_file(const std::filesystem::path& out_dir,
                       const std::string& relative_path,
                       std::string_view content, RunManifest& manifest);

void write_manifest(const std::filesystem::path& out_dir,
                    const RunManifest& manifest,
                    const std::string& filename = "manifest.json");

}  // namespace cqec
