#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psn/sim_time.hpp"

namespace psn {

enum class TraceEvent : std::uint8_t { Send, Recv, Drop, Retransmit };

inline const char* trace_event_name(TraceEvent e) {
  switch (e) {
    case TraceEvent::Send: return "send";
    case TraceEvent::Recv: return "recv";
    case TraceEvent::Drop: return "drop";
    case TraceEvent::Retransmit: return "retransmit";
  }
  return "?";
}

struct TraceRow {
  SimTime at;
  TraceEvent event;
  int flow;
  int node;
  std::int64_t seq;
};

// One cwnd sample: every flow's value at a fixed cadence.
struct CwndSample {
  SimTime at;
  int flow;
  double cwnd;
};

struct FlowCounters {
  std::int64_t sent = 0;        // source transmissions, retransmissions included
  std::int64_t delivered = 0;   // data segments that reached the destination
  std::int64_t dropped = 0;     // data copies lost to full queues
  std::int64_t retransmits = 0;
};

}  // namespace psn
