#pragma once

#include <cstdint>
#include <functional>

#include "v1sim/sim/engine.h"
#include "v1sim/traffic/packet.h"

namespace v1sim {

// Terminal endpoint: stamps arrival time and keeps per-flow counters.
class FlowSink {
 public:
  using Observer = std::function<void(const Packet&)>;

  explicit FlowSink(Engine& engine, Observer observer = {})
      : engine_(engine), observer_(std::move(observer)) {}

  void sink_record(Packet p);

  uint64_t received(FlowId f) const { return received_[flow_index(f)]; }
  uint64_t received_bytes(FlowId f) const { return bytes_[flow_index(f)]; }

 private:
  Engine& engine_;
  Observer observer_;
  PerFlowCount received_{};
  PerFlowCount bytes_{};
};

}  // namespace v1sim
