#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "psn/config.hpp"

namespace psn {

// Reproducibility record written next to every artifact set. The embedded
// canonical config text plus the seed is everything needed to replay the
// run; `complete` is false when artifact emission was interrupted.
struct Manifest {
  std::string command;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string config_text;
  std::vector<std::string> artifacts;
  bool complete = false;
};

Manifest make_manifest(const std::string& command, const ExperimentConfig& cfg);

void write_manifest(const std::filesystem::path& dir, const Manifest& m);
std::optional<Manifest> read_manifest(const std::filesystem::path& dir);

// Guard for output directories: writing over an existing manifest with a
// different identity is refused unless forced.
void ensure_writable(const std::filesystem::path& dir, const Manifest& incoming, bool force);

}  // namespace psn
