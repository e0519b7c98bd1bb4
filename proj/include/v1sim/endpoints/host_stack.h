#pragma once

#include <cstdint>

#include "v1sim/sim/engine.h"
#include "v1sim/sim/rng.h"
#include "v1sim/traffic/packet.h"

namespace v1sim::endpoints {

struct HostStackParams {
  SimTime base_latency = SimTime::microseconds(200);
  // Mean of the exponential extra latency; zero disables it.
  SimTime jitter_mean = SimTime::microseconds(20);
};

// Host network stack crossing (NIC, hypervisor, socket). Packets keep their
// order: each one leaves no earlier than its predecessor.
class HostStack {
 public:
  HostStack(Engine& engine, HostStackParams params, RngStream stream, PacketHandler deliver);

  void receive(Packet p);

  uint64_t processed() const { return processed_; }
  uint64_t in_stack() const { return processed_ - delivered_; }

 private:
  Engine& engine_;
  HostStackParams params_;
  RngStream stream_;
  PacketHandler deliver_;
  SimTime last_departure_;
  uint64_t processed_ = 0;
  uint64_t delivered_ = 0;
};

}  // namespace v1sim::endpoints
