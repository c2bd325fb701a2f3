#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psn/errors.hpp"
#include "psn/packet.hpp"
#include "psn/sim_time.hpp"

namespace psn {

enum class EventKind : std::uint8_t {
  PacketArrival,
  TransmitComplete,
  TimerFire,
  SourceGateToggle,
};

// Flat payload instead of a variant: which fields are meaningful depends on
// `kind` (PacketArrival: node+packet, TransmitComplete: link, TimerFire:
// flow+timer_generation, SourceGateToggle: flow or -1 for all sources).
struct SimEvent {
  SimTime at;
  EventKind kind = EventKind::SourceGateToggle;
  int node = -1;
  int link = -1;
  int flow = -1;
  std::uint64_t timer_generation = 0;
  std::optional<Packet> packet;
  std::uint64_t tiebreak = 0;
};

// Pending-event heap ordered by (at, tiebreak). The tiebreak is a monotone
// insertion counter, so events scheduled for the same instant pop in
// insertion order and every run has a single canonical event sequence.
class EventQueue {
 public:
  void schedule(SimEvent ev) {
    if (ev.at < now_) {
      throw SchedulingInPast("event scheduled at " + std::to_string(ev.at.us()) +
                             "us, before current time " + std::to_string(now_.us()) + "us");
    }
    ev.tiebreak = next_tiebreak_++;
    heap_.push_back(std::move(ev));
    std::push_heap(heap_.begin(), heap_.end(), After{});
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

  const SimEvent& peek() const { return heap_.front(); }

  SimEvent pop() {
    std::pop_heap(heap_.begin(), heap_.end(), After{});
    SimEvent ev = std::move(heap_.back());
    heap_.pop_back();
    now_ = ev.at;
    return ev;
  }

  SimTime now() const { return now_; }

  // Unordered view of pending events, for conservation audits.
  std::span<const SimEvent> pending() const { return heap_; }

 private:
  struct After {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.tiebreak > b.tiebreak;
    }
  };

  std::vector<SimEvent> heap_;
  std::uint64_t next_tiebreak_ = 0;
  SimTime now_;
};

}  // namespace psn
