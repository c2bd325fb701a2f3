#pragma once

#include <vector>

#include "psn/errors.hpp"
#include "psn/link.hpp"

namespace psn {

struct Flow {
  int id = 0;
  int src = 0;
  int dst = 0;
};

// Line of n nodes, a unidirectional link per direction per hop:
// link 2*i carries i -> i+1, link 2*i+1 carries i+1 -> i.
class LineTopology {
 public:
  LineTopology(int node_count, const LinkParams& params) : n_(node_count) {
    if (node_count < 2) throw InvalidNodeCount("topology needs at least 2 nodes");
    links_.reserve(2 * (node_count - 1));
    for (int i = 0; i < node_count - 1; ++i) {
      links_.emplace_back(2 * i, i, i + 1, params);
      links_.emplace_back(2 * i + 1, i + 1, i, params);
    }
  }

  int node_count() const { return n_; }
  int link_count() const { return static_cast<int>(links_.size()); }
  Link& link(int id) { return links_[id]; }
  const Link& link(int id) const { return links_[id]; }
  std::vector<Link>& links() { return links_; }
  const std::vector<Link>& links() const { return links_; }

  // Next-hop link from `at` toward `dest` along the line.
  int next_link(int at, int dest) const {
    if (at == dest || at < 0 || dest < 0 || at >= n_ || dest >= n_)
      throw InvalidConfig("no route from node to itself or outside the line");
    return dest > at ? 2 * at : 2 * (at - 1) + 1;
  }

  // Flow k connects node k to node n-1-k, one flow per node, so every flow
  // crosses the middle of the line and path length falls from the ends
  // toward the center (flow 0 spans n-1 hops, flows n/2-1 and n/2 span 1).
  static std::vector<Flow> crossing_flows(int node_count) {
    std::vector<Flow> flows;
    for (int k = 0; k < node_count; ++k) {
      const int dst = node_count - 1 - k;
      if (dst == k) continue;  // odd n: the middle node has no peer
      flows.push_back(Flow{static_cast<int>(flows.size()), k, dst});
    }
    return flows;
  }

 private:
  int n_;
  std::vector<Link> links_;
};

}  // namespace psn
