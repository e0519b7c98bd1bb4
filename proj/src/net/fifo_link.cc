#include "v1sim/net/fifo_link.h"

#include <algorithm>
#include <cmath>

#include "v1sim/sim/errors.h"

namespace v1sim {

FifoLink::FifoLink(Engine& engine, FifoLinkConfig config, PacketHandler deliver, DropHandler on_drop)
    : engine_(engine), config_(config), deliver_(std::move(deliver)), on_drop_(std::move(on_drop)) {
  if (!(config_.rate_bps > 0.0)) throw ConfigError("link rate must be > 0");
  if (config_.background_bps < 0.0) throw ConfigError("link background load must be >= 0");
  if (config_.propagation < SimTime()) throw ConfigError("link propagation must be >= 0");
  last_update_ = engine_.now();
}

SimTime FifoLink::serialization(uint32_t size_bytes) const {
  return SimTime::from_seconds(size_bytes * 8.0 / config_.rate_bps);
}

void FifoLink::drain_to(SimTime now) {
  const double elapsed = (now - last_update_).to_seconds();
  last_update_ = now;
  if (config_.background_bps >= config_.rate_bps) {
    work_bytes_ = static_cast<double>(config_.buffer_bytes);
    return;
  }
  const double net_bytes_per_s = (config_.rate_bps - config_.background_bps) / 8.0;
  work_bytes_ = std::max(0.0, work_bytes_ - net_bytes_per_s * elapsed);
}

uint64_t FifoLink::total_drops() const {
  uint64_t n = 0;
  for (auto d : drops_) n += d;
  return n;
}

bool FifoLink::send(Packet p) {
  const SimTime now = engine_.now();
  drain_to(now);
  if (work_bytes_ + p.size_bytes > static_cast<double>(config_.buffer_bytes)) {
    ++drops_[flow_index(p.flow)];
    if (on_drop_) on_drop_(p);
    return false;
  }
  work_bytes_ += p.size_bytes;
  const SimTime done = now + SimTime::from_seconds(work_bytes_ * 8.0 / config_.rate_bps);
  ++forwarded_;
  engine_.schedule(done + config_.propagation,
                   [this, p = std::move(p)]() mutable { deliver_(std::move(p)); });
  return true;
}

}  // namespace v1sim
