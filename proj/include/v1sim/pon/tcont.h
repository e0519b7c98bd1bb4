#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "v1sim/traffic/packet.h"

namespace v1sim::pon {

enum class TContType { kType3 };

struct TContProfile {
  uint32_t tcont_id = 0;
  TContType type = TContType::kType3;
  double assured_bps = 0.0;
  uint64_t queue_capacity_bytes = 1'000'000;
};

struct Departure {
  Packet packet;
  // Offset of the packet's last byte from the start of the burst.
  uint64_t burst_end_offset = 0;
};

struct ServeResult {
  std::vector<Departure> departures;
  uint64_t bytes_sent = 0;
};

// Upstream queue of one ONU port. Occupancy counts bytes not yet sent,
// including the unsent tail of a partially transmitted head packet.
class TContQueue {
 public:
  // With fragmentation a packet may span bursts; without it, grant residue
  // smaller than the head packet is forfeited.
  TContQueue(TContProfile profile, bool fragmentation);

  // Tail-drops when the packet would exceed queue capacity.
  bool upstream_enqueue(Packet p);

  ServeResult serve(uint64_t grant_bytes);

  uint64_t occupancy_bytes() const { return occupancy_; }
  size_t queued_packets() const { return fifo_.size(); }
  uint64_t drops(FlowId f) const { return drops_[flow_index(f)]; }
  uint64_t total_drops() const;
  const TContProfile& profile() const { return profile_; }

 private:
  TContProfile profile_;
  bool fragmentation_;
  std::deque<Packet> fifo_;
  uint64_t head_sent_ = 0;
  uint64_t occupancy_ = 0;
  PerFlowCount drops_{};
};

}  // namespace v1sim::pon
