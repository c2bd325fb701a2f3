#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "psn/analysis/pca.hpp"
#include "psn/analysis/state_graph.hpp"
#include "psn/analysis/stats.hpp"
#include "psn/simulator.hpp"

namespace psn {

// Write through a temp file in the same directory, then rename into place,
// so readers never observe a half-written artifact.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& fill);
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

void write_cwnd_csv(const std::filesystem::path& path, const RunResult& run);
void write_trace_csv(const std::filesystem::path& path, const RunResult& run);
void write_counters_csv(const std::filesystem::path& path, const RunResult& run);
void write_stats_csv(const std::filesystem::path& path, const std::vector<FlowStats>& stats);
void write_bifurcation_csv(const std::filesystem::path& path,
                           const std::vector<BifurcationPoint>& points);
void write_pca_csv(const std::filesystem::path& path, const PcaModel& model,
                   const std::vector<bool>& perturbed_flags);

// cwnd.csv back into per-flow series, indexed by flow id.
std::map<int, std::vector<float>> read_cwnd_csv(const std::filesystem::path& path);

struct CounterRow {
  int flow = 0;
  FlowCounters counters;
  double median_transit_s = 0.0;
};
std::vector<CounterRow> read_counters_csv(const std::filesystem::path& path);

}  // namespace psn
