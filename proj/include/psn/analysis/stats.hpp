#pragma once

#include <cstdint>
#include <vector>

#include "psn/analysis/state_graph.hpp"
#include "psn/config.hpp"
#include "psn/simulator.hpp"

namespace psn {

// One (flow, duty) cell of the summary table.
struct FlowStats {
  int flow = 0;
  double duty = 0.0;
  std::int64_t sent = 0;
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;
  double throughput = 1.0;
  int n_states = 1;
  int n_dims_99 = 0;
  double lyapunov = 0.0;
  bool lyapunov_valid = false;
};

// Assemble the stats of one flow from a finished run: counters plus the
// window/PCA/state-graph pipeline on its cwnd series. The Lyapunov estimate
// is optional because it dominates runtime on long series.
FlowStats flow_stats(const RunResult& run, int flow, const AnalysisParams& ap,
                     bool with_lyapunov = false);

std::vector<FlowStats> run_stats(const RunResult& run, const AnalysisParams& ap,
                                 bool with_lyapunov = false);

// The state graph of one flow of a finished run (shared by flow_stats and
// the transition-graph exports).
StateGraph flow_state_graph(const RunResult& run, int flow, const AnalysisParams& ap);

struct BifurcationPoint {
  double duty = 0.0;
  int flow = 0;
  double peak = 0.0;
};

// Post-transient local peaks of one flow's cwnd series; returns an empty
// list when fewer than 3 samples survive the settle cutoff.
std::vector<double> settled_peaks(const std::vector<float>& series, double dt_s, double settle_s);

}  // namespace psn
