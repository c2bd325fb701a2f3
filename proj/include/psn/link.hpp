#pragma once

#include <cstdint>
#include <deque>

#include "psn/packet.hpp"
#include "psn/sim_time.hpp"

namespace psn {

struct LinkParams {
  std::int64_t bandwidth_bps = 1'000'000;
  double propagation_delay_s = 0.010;
  std::size_t queue_capacity = 50;
};

// Serialization time of `size_bytes` at `bandwidth_bps`, rounded to the
// nearest microsecond.
inline Micros serialization_us(int size_bytes, std::int64_t bandwidth_bps) {
  const std::int64_t bits = static_cast<std::int64_t>(size_bytes) * 8;
  return (bits * 1'000'000 + bandwidth_bps / 2) / bandwidth_bps;
}

enum class EnqueueResult : std::uint8_t { Enqueued, Dropped };

// One simplex link with a drop-tail FIFO buffer. The buffer head is the
// packet in service while `busy` is set; capacity counts it, so a link can
// hold at most `capacity` packets including the one on the wire.
struct Link {
  int id = -1;
  int from = -1;
  int to = -1;
  std::int64_t bandwidth_bps = 1'000'000;
  Micros prop_delay_us = 10'000;
  std::size_t capacity = 50;

  std::deque<Packet> buffer;
  bool busy = false;
  SimTime busy_until;

  Link() = default;
  Link(int id, int from, int to, const LinkParams& p)
      : id(id),
        from(from),
        to(to),
        bandwidth_bps(p.bandwidth_bps),
        prop_delay_us(micros_from_seconds(p.propagation_delay_s)),
        capacity(p.queue_capacity) {}

  bool full() const { return buffer.size() >= capacity; }

  Micros tx_time_us(const Packet& pkt) const { return serialization_us(pkt.size_bytes, bandwidth_bps); }
};

// Drop-tail admission: the packet joins the FIFO unless the buffer is at
// capacity. Scheduling the actual transmission is the caller's job.
inline EnqueueResult enqueue_packet(Link& link, const Packet& pkt) {
  if (link.full()) return EnqueueResult::Dropped;
  link.buffer.push_back(pkt);
  return EnqueueResult::Enqueued;
}

// When would `pkt` reach the far end if offered to `link` now? Start of
// service waits for the in-service packet and every queued predecessor.
inline SimTime delivery_time(const Link& link, const Packet& pkt, SimTime now) {
  SimTime start = now;
  if (link.busy) {
    start = link.busy_until;
    for (std::size_t i = 1; i < link.buffer.size(); ++i) {
      start = start + link.tx_time_us(link.buffer[i]);
    }
  }
  return start + link.tx_time_us(pkt) + link.prop_delay_us;
}

}  // namespace psn
