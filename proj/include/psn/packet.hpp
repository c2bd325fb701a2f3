#pragma once

#include <cstdint>

#include "psn/sim_time.hpp"

namespace psn {

enum class PacketKind : std::uint8_t { Data, Ack };

// One packet copy in flight. Sequence numbers are in MSS units, so a DATA
// packet with seq s is "the s-th segment" of its flow. A retransmission is a
// fresh copy (new id, same seq). ACKs carry the receiver's cumulative
// next-expected sequence in `seq`.
struct Packet {
  std::uint64_t id = 0;
  int flow = -1;
  PacketKind kind = PacketKind::Data;
  std::int64_t seq = 0;
  int size_bytes = 0;
  SimTime created_at;
  int hop_count = 0;
};

}  // namespace psn
