#include <doctest.h>

#include <vector>

#include "psn/event_queue.hpp"

using namespace psn;

namespace {
SimEvent at_us(Micros t, int flow = -1) {
  SimEvent ev;
  ev.at = SimTime::from_us(t);
  ev.kind = EventKind::SourceGateToggle;
  ev.flow = flow;
  return ev;
}
}  // namespace

TEST_CASE("single event pops back out") {
  EventQueue q;
  q.schedule(at_us(5));
  REQUIRE(q.size() == 1);
  CHECK(q.pop().at.us() == 5);
  CHECK(q.empty());
}

TEST_CASE("events pop in time order regardless of insertion order") {
  EventQueue q;
  q.schedule(at_us(5));
  q.schedule(at_us(3));
  CHECK(q.pop().at.us() == 3);
  CHECK(q.pop().at.us() == 5);
}

TEST_CASE("equal timestamps pop in insertion order") {
  EventQueue q;
  q.schedule(at_us(5, 1));  // A
  q.schedule(at_us(5, 2));  // B
  CHECK(q.pop().flow == 1);
  CHECK(q.pop().flow == 2);
}

TEST_CASE("popping advances now and past scheduling throws") {
  EventQueue q;
  q.schedule(at_us(10));
  q.pop();
  CHECK(q.now().us() == 10);
  CHECK_THROWS_AS(q.schedule(at_us(9)), SchedulingInPast);
  q.schedule(at_us(10));  // same instant is allowed
  CHECK(q.pop().at.us() == 10);
}

TEST_CASE("interleaved schedule and pop keeps global order") {
  EventQueue q;
  std::vector<Micros> popped;
  q.schedule(at_us(4));
  q.schedule(at_us(1));
  popped.push_back(q.pop().at.us());
  q.schedule(at_us(2));
  q.schedule(at_us(8));
  while (!q.empty()) popped.push_back(q.pop().at.us());
  CHECK(popped == std::vector<Micros>{1, 2, 4, 8});
}

TEST_CASE("large shuffled batch pops sorted with stable ties") {
  EventQueue q;
  // 0,1,...,9 repeated in descending blocks: schedule times 9..0 five times.
  int marker = 0;
  for (int rep = 0; rep < 5; ++rep)
    for (Micros t = 9; t >= 0; --t) q.schedule(at_us(t, marker++));
  Micros prev_t = -1;
  int prev_marker = -1;
  while (!q.empty()) {
    const SimEvent ev = q.pop();
    CHECK(ev.at.us() >= prev_t);
    if (ev.at.us() == prev_t) CHECK(ev.flow > prev_marker);  // FIFO among equals
    prev_t = ev.at.us();
    prev_marker = ev.flow;
  }
}
