#pragma once

#include <cstdint>
#include <functional>

#include "v1sim/endpoints/reorder_buffer.h"
#include "v1sim/sim/engine.h"
#include "v1sim/traffic/packet.h"

namespace v1sim::endpoints {

// Mobile V1 receiver at the DU: feeds the reorder buffer and keeps its gap
// timer armed.
class DuEndpoint {
 public:
  using Observer = std::function<void(const Packet&, Classification)>;

  DuEndpoint(Engine& engine, ReorderParams params, Observer observer = {});

  void receive(Packet p);
  void on_path_drop(const Packet& p) { buffer_.on_path_drop(p.seq); }

  const ReorderBuffer& buffer() const { return buffer_; }

 private:
  void arm();

  Engine& engine_;
  ReorderBuffer buffer_;
  Observer observer_;
  bool armed_ = false;
  SimTime armed_at_;
};

}  // namespace v1sim::endpoints
