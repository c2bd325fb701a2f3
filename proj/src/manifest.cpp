#include "psn/manifest.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "psn/errors.hpp"
#include "psn/io.hpp"

namespace psn {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

Manifest make_manifest(const std::string& command, const ExperimentConfig& cfg) {
  Manifest m;
  m.command = command;
  m.config_hash = config_hash(cfg);
  m.seed = cfg.sim.seed;
  m.config_text = serialize_config(cfg);
  return m;
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  json j;
  j["command"] = m.command;
  j["config_hash"] = hash_hex(m.config_hash);
  j["seed"] = m.seed;
  j["config"] = m.config_text;
  j["artifacts"] = m.artifacts;
  j["complete"] = m.complete;
  atomic_write_text(dir / "manifest.json", j.dump(2) + "\n");
}

std::optional<Manifest> read_manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig("corrupt manifest in " + dir.string() + ": " + e.what());
  }
  Manifest m;
  m.command = j.value("command", "");
  m.config_hash = std::stoull(j.value("config_hash", "0"), nullptr, 16);
  m.seed = j.value("seed", std::uint64_t{0});
  m.config_text = j.value("config", "");
  m.artifacts = j.value("artifacts", std::vector<std::string>{});
  m.complete = j.value("complete", false);
  return m;
}

void ensure_writable(const fs::path& dir, const Manifest& incoming, bool force) {
  const auto existing = read_manifest(dir);
  if (!existing) return;
  if (existing->config_hash == incoming.config_hash && existing->command == incoming.command)
    return;  // identical identity: rerun reproduces the same bytes
  if (!force)
    throw UsageError("output directory " + dir.string() +
                     " holds artifacts from a different run; pass --force to overwrite");
}

}  // namespace psn
