#pragma once

#include <cstdint>
#include <deque>

#include "v1sim/sim/engine.h"
#include "v1sim/sim/rng.h"
#include "v1sim/traffic/packet.h"

namespace v1sim::endpoints {

struct ReceiverBudgetParams {
  double max_process_rate_bps = 160e6;
  // Packets in the system, including the one in service.
  uint32_t depth_packets = 12;
};

// Bounded-rate receiver of a resource-limited VM. Per-packet service time is
// exponential with mean size*8/rate; arrivals finding the system full drop.
class ReceiverBudget {
 public:
  ReceiverBudget(Engine& engine, ReceiverBudgetParams params, RngStream stream, PacketHandler deliver,
                 DropHandler drop);

  void receive(Packet p);

  uint64_t drops() const { return drops_; }
  uint64_t served() const { return served_; }
  size_t occupancy() const { return queue_.size(); }

 private:
  void start_service();

  Engine& engine_;
  ReceiverBudgetParams params_;
  RngStream stream_;
  PacketHandler deliver_;
  DropHandler drop_;
  std::deque<Packet> queue_;
  uint64_t drops_ = 0;
  uint64_t served_ = 0;
};

}  // namespace v1sim::endpoints
