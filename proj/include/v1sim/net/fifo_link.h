#pragma once

#include <cstdint>

#include "v1sim/sim/engine.h"
#include "v1sim/traffic/packet.h"

namespace v1sim {

struct FifoLinkConfig {
  double rate_bps = 10e9;
  uint64_t buffer_bytes = 2'000'000;
  SimTime propagation;
  // Cross traffic modelled as a fluid sharing the FIFO. Must stay below
  // rate_bps for the link to carry anything else.
  double background_bps = 0.0;
};

// Store-and-forward FIFO at a fixed line rate with a finite byte buffer.
// The packet leaves once all work ahead of it plus its own bytes are
// serialized, then arrives downstream after the propagation delay.
class FifoLink {
 public:
  FifoLink(Engine& engine, FifoLinkConfig config, PacketHandler deliver, DropHandler on_drop = {});

  // Returns false if the packet was dropped at the buffer.
  bool send(Packet p);

  SimTime serialization(uint32_t size_bytes) const;
  double backlog_bytes() const { return work_bytes_; }
  uint64_t forwarded() const { return forwarded_; }
  uint64_t drops(FlowId f) const { return drops_[flow_index(f)]; }
  uint64_t total_drops() const;
  const FifoLinkConfig& config() const { return config_; }

 private:
  void drain_to(SimTime now);

  Engine& engine_;
  FifoLinkConfig config_;
  PacketHandler deliver_;
  DropHandler on_drop_;
  double work_bytes_ = 0.0;
  SimTime last_update_;
  uint64_t forwarded_ = 0;
  PerFlowCount drops_{};
};

}  // namespace v1sim
