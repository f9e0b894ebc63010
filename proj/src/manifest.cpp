#include "cqec/manifest.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cqec {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string file_digest_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string() +
                             " for digesting");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0')
      << fnv1a64(buffer.str());
  return hex.str();
}

void RunManifest::record_output(const std::filesystem::path& out_dir,
                                const std::string& relative_path) {
  outputs.push_back({relative_path, file_digest_hex(out_dir / relative_path)});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& o : outputs) {
    outs.push_back({{"path", o.path}, {"digest", o.digest}});
  }
  return nlohmann::json{{"tool_version", tool_version},
                        {"command", command},
                        {"config", resolved_config},
                        {"master_seed", master_seed},
                        {"started_at", started_at},
                        {"finished_at", finished_at},
                        {"outputs", outs}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest manifest;
  manifest.tool_version = j.at("tool_version").get<std::string>();
  manifest.command = j.at("command").get<std::string>();
  manifest.resolved_config = j.at("config");
  manifest.master_seed = j.at("master_seed").get<std::uint64_t>();
  manifest.started_at = j.value("started_at", "");
  manifest.finished_at = j.value("finished_at", "");
  for (const auto& o : j.at("outputs")) {
    manifest.outputs.push_back({o.at("path").get<std::string>(),
                                o.at("digest").get<std::string>()});
  }
  return manifest;
}

std::string current_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_output_file(const std::filesystem::path& out_dir,
                       const std::string& relative_path,
                       std::string_view content, RunManifest& manifest) {
  std::filesystem::path full = out_dir / relative_path;
  std::filesystem::create_directories(full.parent_path());
  std::ofstream out(full, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + full.string());
  }
  out << content;
  out.close();
  manifest.record_output(out_dir, relative_path);
}

void write_manifest(const std::filesystem::path& out_dir,
                    const RunManifest& manifest, const std::string& filename) {
  std::ofstream out(out_dir / filename);
  if (!out) {
    throw std::runtime_error("cannot write manifest to " +
                             (out_dir / filename).string());
  }
  out << manifest.to_json().dump(2) << "\n";
}

}  // namespace cqec
