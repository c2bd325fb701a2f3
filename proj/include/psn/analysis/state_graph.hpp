#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "psn/sim_time.hpp"

namespace psn {

// Per-axis quantization of the 2-D projection plane into `bins` cells over
// the observed range. A zero range collapses that axis to a single bin.
struct QuantizationSpec {
  double min1 = 0.0, min2 = 0.0;
  double eps1 = 0.0, eps2 = 0.0;  // bin widths; 0 means a degenerate axis
  int bins = 100;
};

QuantizationSpec fit_quantization(const Eigen::MatrixXd& projections, int bins = 100);

struct StateId {
  int b1 = 0;
  int b2 = 0;
  auto operator<=>(const StateId&) const = default;
};

StateId quantize_state(double pc1, double pc2, const QuantizationSpec& q);

struct StateNode {
  int id = 0;  // creation order
  StateId cell;
  double rep1 = 0.0, rep2 = 0.0;  // coordinates of the first visit
  bool perturbed = false;
};

struct StateEdge {
  int from = 0;
  int to = 0;
  std::int64_t weight = 0;
};

struct StateGraph {
  std::vector<StateNode> nodes;
  std::vector<StateEdge> edges;  // sorted by (from, to)
  std::vector<int> order;        // node id visited at each window
  std::int64_t total_weight() const {
    std::int64_t s = 0;
    for (const auto& e : edges) s += e.weight;
    return s;
  }
};

// Consecutive windows become directed transitions: a revisit bumps the edge
// weight, staying put forms a self-loop. A node is flagged perturbed when
// its first visit happens in a window that overlaps a burst, or in the
// window right after one.
StateGraph build_transition_graph(const Eigen::MatrixXd& projections,
                                  const QuantizationSpec& q,
                                  const std::vector<std::pair<Micros, Micros>>& bursts = {},
                                  double window_s = 0.0);

std::string graph_to_dot(const StateGraph& g);
std::string graph_to_json(const StateGraph& g);

}  // namespace psn
