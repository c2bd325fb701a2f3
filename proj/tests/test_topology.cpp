#include <doctest.h>

#include <cstdlib>

#include "psn/duty_gate.hpp"
#include "psn/topology.hpp"

using namespace psn;

TEST_CASE("a 30-node line has 29 node pairs wired both ways") {
  LineTopology topo(30, LinkParams{});
  CHECK(topo.node_count() == 30);
  CHECK(topo.link_count() == 58);  // 29 hops, one link per direction
  for (int i = 0; i < 29; ++i) {
    CHECK(topo.link(2 * i).from == i);
    CHECK(topo.link(2 * i).to == i + 1);
    CHECK(topo.link(2 * i + 1).from == i + 1);
    CHECK(topo.link(2 * i + 1).to == i);
  }
}

TEST_CASE("two nodes form the minimal line") {
  LineTopology topo(2, LinkParams{});
  CHECK(topo.link_count() == 2);
  CHECK_THROWS_AS(LineTopology(1, LinkParams{}), InvalidNodeCount);
}

TEST_CASE("next hop walks the line toward the destination") {
  LineTopology topo(30, LinkParams{});
  // 0 -> 29 crosses every rightward link in order
  int at = 0;
  int hops = 0;
  while (at != 29) {
    const int l = topo.next_link(at, 29);
    CHECK(topo.link(l).from == at);
    at = topo.link(l).to;
    ++hops;
  }
  CHECK(hops == 29);

  CHECK(topo.next_link(5, 2) == topo.link(2 * 4 + 1).id);  // leftward
  CHECK_THROWS_AS(topo.next_link(3, 3), InvalidConfig);
}

TEST_CASE("flow k terminates at the mirrored node") {
  const auto flows = LineTopology::crossing_flows(30);
  REQUIRE(flows.size() == 30);
  CHECK(flows[0].src == 0);
  CHECK(flows[0].dst == 29);
  CHECK(flows[29].src == 29);
  CHECK(flows[29].dst == 0);
  CHECK(flows[14].src == 14);
  CHECK(flows[14].dst == 15);  // shortest, together with flow 15
  CHECK(flows[15].dst == 14);
  for (const Flow& f : flows) CHECK(f.dst == 30 - f.src - 1);
}

TEST_CASE("path lengths form a V over the flow index") {
  const auto flows = LineTopology::crossing_flows(30);
  auto hops = [](const Flow& f) { return std::abs(f.dst - f.src); };
  for (int k = 1; k <= 14; ++k) CHECK(hops(flows[k]) < hops(flows[k - 1]));
  for (int k = 16; k <= 29; ++k) CHECK(hops(flows[k]) > hops(flows[k - 1]));
  CHECK(hops(flows[0]) == 29);
  CHECK(hops(flows[14]) == 1);
  CHECK(hops(flows[15]) == 1);
}

TEST_CASE("odd node counts skip the self-paired middle node") {
  const auto flows = LineTopology::crossing_flows(5);
  REQUIRE(flows.size() == 4);  // node 2 pairs with itself and is skipped
  for (const Flow& f : flows) CHECK(f.src != f.dst);
  // ids stay dense even with the gap
  for (std::size_t i = 0; i < flows.size(); ++i) CHECK(flows[i].id == static_cast<int>(i));
}

TEST_CASE("duty gate opens for the leading fraction of each cycle") {
  DutyGate full{1.0};
  DutyGate off{0.0};
  DutyGate half{0.5};
  for (Micros t : {0LL, 250'000LL, 999'999LL, 1'250'000LL}) {
    CHECK(duty_active(full, SimTime::from_us(t)));
    CHECK(!duty_active(off, SimTime::from_us(t)));
  }
  CHECK(duty_active(half, SimTime::from_us(250'000)));
  CHECK(!duty_active(half, SimTime::from_us(750'000)));
  CHECK(duty_active(half, SimTime::from_us(1'000'000)));  // next cycle restarts
  CHECK(!duty_active(half, SimTime::from_us(500'000)));   // boundary is exclusive
  CHECK(duty_active(half, SimTime::from_us(499'999)));
}

TEST_CASE("duty gate honors a phase offset") {
  DutyGate g{0.5, 1'000'000, 300'000};
  CHECK(!duty_active(g, SimTime::from_us(0)));  // 0 - 0.3 wraps to 0.7 of the cycle
  CHECK(duty_active(g, SimTime::from_us(300'000)));
  CHECK(duty_active(g, SimTime::from_us(799'999)));
  CHECK(!duty_active(g, SimTime::from_us(800'000)));
}
