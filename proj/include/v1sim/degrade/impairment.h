#pragma once

#include <cstdint>

#include "v1sim/sim/engine.h"
#include "v1sim/sim/rng.h"
#include "v1sim/traffic/packet.h"

namespace v1sim::degrade {

struct DegradationParams {
  SimTime mean_latency = SimTime::milliseconds(2);
  SimTime jitter_sigma;
  SimTime min_latency_floor;
};

void validate(const DegradationParams& params);

// Per-packet delay max(floor, N(mean, sigma^2)), rounded to the nearest ns.
SimTime sample_delay(const DegradationParams& params, RngStream& stream);

// Aggregation-network emulator. Each packet is delayed independently and
// never re-serialized, so packets may overtake one another.
class ImpairmentEngine {
 public:
  ImpairmentEngine(Engine& engine, DegradationParams params, RngStream stream, PacketHandler deliver);

  void degrade(Packet p);

  uint64_t submitted() const { return submitted_; }
  const DegradationParams& params() const { return params_; }

 private:
  Engine& engine_;
  DegradationParams params_;
  RngStream stream_;
  PacketHandler deliver_;
  uint64_t submitted_ = 0;
};

}  // namespace v1sim::degrade
