#pragma once

#include <cstdint>
#include <string>

#include "psn/simulator.hpp"

namespace psn {

struct AnalysisParams {
  double window_s = 10.0;         // PCA window length T
  int grid_bins = 100;            // quantization bins per projection axis
  double settle_fraction = 0.10;  // transient discarded before peak extraction
  double contribution = 0.99;     // eigenvalue mass threshold for n_dims
  int embed_dim = 5;
  int embed_delay = 10;
  int theiler = 50;
  int fit_begin = 1;
  int fit_count = 30;
  int max_refs = 1000;
};

struct ExperimentConfig {
  SimConfig sim;
  AnalysisParams analysis;
};

// 1,000 s profile for iterating at a desk; same physics as the full run.
ExperimentConfig desk_profile();
// Full 10,000 s run: 30 nodes, dt 0.01 s, T 10 s, 10 s bursts every 100 s.
ExperimentConfig paper_profile();

// Key/value config with [section] headers; '#' and ';' start comments.
// Unknown sections or keys are rejected so typos cannot silently fall back
// to defaults.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical rendering: fixed section and key order, so equal configs always
// serialize to equal bytes. parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ExperimentConfig& c);

}  // namespace psn
