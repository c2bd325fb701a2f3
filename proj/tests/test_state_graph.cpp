#include <doctest.h>

#include <random>

#include "psn/analysis/state_graph.hpp"
#include "psn/errors.hpp"

using namespace psn;

namespace {

Eigen::MatrixXd points(std::initializer_list<std::pair<double, double>> pts) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 2);
  Eigen::Index i = 0;
  for (const auto& [x, y] : pts) {
    m(i, 0) = x;
    m(i, 1) = y;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("quantization grid spans the observed range") {
  const Eigen::MatrixXd p = points({{0.0, -1.0}, {10.0, 1.0}, {5.0, 0.0}});
  const QuantizationSpec q = fit_quantization(p, 100);
  CHECK(q.min1 == 0.0);
  CHECK(q.min2 == -1.0);
  CHECK(q.eps1 == doctest::Approx(0.1));
  CHECK(q.eps2 == doctest::Approx(0.02));

  CHECK(quantize_state(0.0, -1.0, q) == StateId{0, 0});
  CHECK(quantize_state(10.0, 1.0, q) == StateId{99, 99});  // max clamps into the top bin
  CHECK(quantize_state(5.0, 0.0, q) == StateId{50, 50});
  CHECK(quantize_state(0.55, -0.99, q) == StateId{5, 0});
}

TEST_CASE("a degenerate axis collapses to bin zero") {
  const Eigen::MatrixXd p = points({{1.0, 7.0}, {2.0, 7.0}, {3.0, 7.0}});
  const QuantizationSpec q = fit_quantization(p, 100);
  CHECK(q.eps2 == 0.0);
  CHECK(quantize_state(1.5, 7.0, q).b2 == 0);
  CHECK(quantize_state(3.0, 7.0, q).b1 == 99);
}

TEST_CASE("single-bin grids make every window the same state") {
  const Eigen::MatrixXd p = points({{0, 0}, {5, 3}, {9, -2}, {1, 1}});
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 1));
  CHECK(g.nodes.size() == 1);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].from == 0);
  CHECK(g.edges[0].to == 0);
  CHECK(g.edges[0].weight == 3);  // one self-loop carrying all transitions
}

TEST_CASE("alternating windows build a two-node cycle") {
  const Eigen::MatrixXd p = points({{0, 0}, {9, 9}, {0, 0}, {9, 9}});
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 10));
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].id == 0);  // first-appearance order
  CHECK(g.nodes[0].rep1 == 0.0);
  CHECK(g.nodes[1].rep1 == 9.0);

  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].from == 0);
  CHECK(g.edges[0].to == 1);
  CHECK(g.edges[0].weight == 2);  // 0->1 happens twice
  CHECK(g.edges[1].from == 1);
  CHECK(g.edges[1].to == 0);
  CHECK(g.edges[1].weight == 1);
  CHECK(g.order == std::vector<int>{0, 1, 0, 1});
}

TEST_CASE("edge weights always sum to one less than the window count") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int w = 2 + static_cast<int>(rng() % 60);
    Eigen::MatrixXd p(w, 2);
    for (int i = 0; i < w; ++i) {
      p(i, 0) = u(rng);
      p(i, 1) = u(rng);
    }
    const StateGraph g = build_transition_graph(p, fit_quantization(p, 10));
    CHECK(g.total_weight() == w - 1);
    CHECK(static_cast<int>(g.nodes.size()) <= w);
    CHECK(g.order.size() == static_cast<std::size_t>(w));
  }
}

TEST_CASE("nodes first visited during or right after a burst are flagged") {
  // Windows of 1 s; burst covers [2, 3).
  const Eigen::MatrixXd p = points({{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
  const std::vector<std::pair<Micros, Micros>> bursts{{2'000'000, 3'000'000}};
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 5), bursts, 1.0);
  REQUIRE(g.nodes.size() == 5);
  CHECK(!g.nodes[0].perturbed);
  CHECK(!g.nodes[1].perturbed);
  CHECK(g.nodes[2].perturbed);   // window [2,3) overlaps the burst
  CHECK(g.nodes[3].perturbed);   // the window right after
  CHECK(!g.nodes[4].perturbed);
}

TEST_CASE("burst flags only mark first visits") {
  // The cell first seen in window 0 (clean) is revisited during the burst;
  // it stays clean because flags capture discovery, not every visit.
  const Eigen::MatrixXd p = points({{0, 0}, {5, 5}, {0, 0}, {5, 5}});
  const std::vector<std::pair<Micros, Micros>> bursts{{2'000'000, 3'000'000}};
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 10), bursts, 1.0);
  REQUIRE(g.nodes.size() == 2);
  CHECK(!g.nodes[0].perturbed);
  CHECK(!g.nodes[1].perturbed);
}

TEST_CASE("graph construction needs two windows and 2-D points") {
  const Eigen::MatrixXd p = points({{0, 0}});
  CHECK_THROWS_AS(build_transition_graph(p, QuantizationSpec{}), InvalidCounts);
  Eigen::MatrixXd one_d(4, 1);
  one_d.setZero();
  CHECK_THROWS_AS(fit_quantization(one_d, 10), InvalidCounts);
  CHECK_THROWS_AS(fit_quantization(points({{0, 0}, {1, 1}}), 0), InvalidConfig);
}

TEST_CASE("DOT output lists states and weighted transitions") {
  const Eigen::MatrixXd p = points({{0, 0}, {9, 9}, {0, 0}});
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 10));
  const std::string dot = graph_to_dot(g);
  CHECK(dot.find("digraph states {") != std::string::npos);
  CHECK(dot.find("s0 [label=\"0,0\"]") != std::string::npos);
  CHECK(dot.find("s1 [label=\"9,9\"]") != std::string::npos);
  CHECK(dot.find("s0 -> s1 [label=\"1\"]") != std::string::npos);
  CHECK(dot.find("s1 -> s0 [label=\"1\"]") != std::string::npos);
  CHECK(dot.find("perturbed") == std::string::npos);  // no bursts here
}

TEST_CASE("DOT marks perturbed nodes") {
  const Eigen::MatrixXd p = points({{0, 0}, {1, 1}, {2, 2}});
  const std::vector<std::pair<Micros, Micros>> bursts{{0, 500'000}};
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 3), bursts, 1.0);
  const std::string dot = graph_to_dot(g);
  CHECK(dot.find("fillcolor=lightblue") != std::string::npos);
  CHECK(dot.find("perturbed=true") != std::string::npos);
}

TEST_CASE("JSON twin carries the same structure") {
  const Eigen::MatrixXd p = points({{0, 0}, {9, 9}, {0, 0}});
  const StateGraph g = build_transition_graph(p, fit_quantization(p, 10));
  const std::string js = graph_to_json(g);
  CHECK(js.find("\"nodes\"") != std::string::npos);
  CHECK(js.find("\"edges\"") != std::string::npos);
  CHECK(js.find("\"order\": [0, 1, 0]") != std::string::npos);
  CHECK(js.find("\"weight\": 1") != std::string::npos);
}

TEST_CASE("identical inputs render identical graphs") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd p(40, 2);
  for (int i = 0; i < 40; ++i) {
    p(i, 0) = u(rng);
    p(i, 1) = u(rng);
  }
  const QuantizationSpec q = fit_quantization(p, 20);
  const std::string a = graph_to_dot(build_transition_graph(p, q));
  const std::string b = graph_to_dot(build_transition_graph(p, q));
  CHECK(a == b);
  const std::string ja = graph_to_json(build_transition_graph(p, q));
  const std::string jb = graph_to_json(build_transition_graph(p, q));
  CHECK(ja == jb);
}
