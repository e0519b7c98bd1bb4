#include "v1sim/endpoints/host_stack.h"

#include <algorithm>

#include "v1sim/sim/errors.h"

namespace v1sim::endpoints {

HostStack::HostStack(Engine& engine, HostStackParams params, RngStream stream, PacketHandler deliver)
    : engine_(engine), params_(params), stream_(stream), deliver_(std::move(deliver)) {
  if (params_.base_latency < SimTime() || params_.jitter_mean < SimTime()) {
    throw ConfigError("host stack latencies must be >= 0");
  }
}

void HostStack::receive(Packet p) {
  ++processed_;
  SimTime extra;
  if (params_.jitter_mean > SimTime()) {
    extra = SimTime::from_seconds(stream_.exponential(params_.jitter_mean.to_seconds()));
  }
  last_departure_ = std::max(last_departure_, engine_.now() + params_.base_latency + extra);
  engine_.schedule(last_departure_, [this, p = std::move(p)]() mutable {
    ++delivered_;
    deliver_(std::move(p));
  });
}

}  // namespace v1sim::endpoints
