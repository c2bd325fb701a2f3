#include "psn/analysis/state_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "psn/errors.hpp"

namespace psn {

QuantizationSpec fit_quantization(const Eigen::MatrixXd& projections, int bins) {
  if (projections.cols() < 2) throw InvalidCounts("quantization needs 2-D projections");
  if (bins < 1) throw InvalidConfig("quantization needs at least 1 bin per axis");
  QuantizationSpec q;
  q.bins = bins;
  q.min1 = projections.col(0).minCoeff();
  q.min2 = projections.col(1).minCoeff();
  // An axis whose spread is pure floating-point noise is one state, not
  // `bins` states; eps 0 collapses it to a single bin.
  auto span = [](double lo, double hi) {
    const double range = hi - lo;
    return range <= 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)}) ? 0.0 : range;
  };
  q.eps1 = span(q.min1, projections.col(0).maxCoeff()) / static_cast<double>(bins);
  q.eps2 = span(q.min2, projections.col(1).maxCoeff()) / static_cast<double>(bins);
  return q;
}

namespace {

int axis_bin(double v, double lo, double eps, int bins) {
  if (eps <= 0.0) return 0;
  int b = static_cast<int>(std::floor((v - lo) / eps));
  if (b < 0) b = 0;
  if (b >= bins) b = bins - 1;  // the range maximum lands in the top bin
  return b;
}

}  // namespace

StateId quantize_state(double pc1, double pc2, const QuantizationSpec& q) {
  return StateId{axis_bin(pc1, q.min1, q.eps1, q.bins), axis_bin(pc2, q.min2, q.eps2, q.bins)};
}

StateGraph build_transition_graph(const Eigen::MatrixXd& projections,
                                  const QuantizationSpec& q,
                                  const std::vector<std::pair<Micros, Micros>>& bursts,
                                  double window_s) {
  const Eigen::Index w = projections.rows();
  if (w < 2 || projections.cols() < 2)
    throw InvalidCounts("transition graph needs at least 2 windows of 2-D projections");

  const Micros window_us = micros_from_seconds(window_s);
  auto window_overlaps_burst = [&](Eigen::Index i) {
    if (bursts.empty() || window_us <= 0) return false;
    const Micros lo = static_cast<Micros>(i) * window_us;
    const Micros hi = lo + window_us;
    for (const auto& b : bursts)
      if (lo < b.second && b.first < hi) return true;
    return false;
  };

  StateGraph g;
  std::map<StateId, int> ids;
  std::map<std::pair<int, int>, std::int64_t> weights;
  g.order.reserve(static_cast<std::size_t>(w));

  int prev = -1;
  for (Eigen::Index i = 0; i < w; ++i) {
    const StateId cell = quantize_state(projections(i, 0), projections(i, 1), q);
    auto [it, fresh] = ids.try_emplace(cell, static_cast<int>(g.nodes.size()));
    if (fresh) {
      StateNode n;
      n.id = it->second;
      n.cell = cell;
      n.rep1 = projections(i, 0);
      n.rep2 = projections(i, 1);
      n.perturbed = window_overlaps_burst(i) || (i > 0 && window_overlaps_burst(i - 1));
      g.nodes.push_back(n);
    }
    const int cur = it->second;
    g.order.push_back(cur);
    if (prev >= 0) ++weights[{prev, cur}];
    prev = cur;
  }

  g.edges.reserve(weights.size());
  for (const auto& [key, weight] : weights)
    g.edges.push_back(StateEdge{key.first, key.second, weight});
  return g;
}

std::string graph_to_dot(const StateGraph& g) {
  std::ostringstream out;
  out << "digraph states {\n";
  out << "  node [shape=circle];\n";
  for (const auto& n : g.nodes) {
    out << "  s" << n.id << " [label=\"" << n.cell.b1 << "," << n.cell.b2 << "\"";
    if (n.perturbed) out << " style=filled fillcolor=lightblue perturbed=true";
    out << "];\n";
  }
  for (const auto& e : g.edges)
    out << "  s" << e.from << " -> s" << e.to << " [label=\"" << e.weight << "\"];\n";
  out << "}\n";
  return out.str();
}

std::string graph_to_json(const StateGraph& g) {
  std::ostringstream out;
  out.precision(17);
  out << "{\n  \"nodes\": [";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out << (i ? ",\n    " : "\n    ");
    out << "{\"id\": " << n.id << ", \"cell\": [" << n.cell.b1 << ", " << n.cell.b2
        << "], \"rep\": [" << n.rep1 << ", " << n.rep2 << "], \"perturbed\": "
        << (n.perturbed ? "true" : "false") << "}";
  }
  out << "\n  ],\n  \"edges\": [";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    out << (i ? ",\n    " : "\n    ");
    out << "{\"from\": " << e.from << ", \"to\": " << e.to << ", \"weight\": " << e.weight << "}";
  }
  out << "\n  ],\n  \"order\": [";
  for (std::size_t i = 0; i < g.order.size(); ++i) out << (i ? ", " : "") << g.order[i];
  out << "]\n}\n";
  return out.str();
}

}  // namespace psn
