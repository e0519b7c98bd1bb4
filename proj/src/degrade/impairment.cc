#include "v1sim/degrade/impairment.h"

#include <algorithm>

#include "v1sim/sim/errors.h"

namespace v1sim::degrade {

void validate(const DegradationParams& params) {
  if (params.mean_latency < SimTime()) throw ConfigError("degradation mean latency must be >= 0");
  if (params.jitter_sigma < SimTime()) throw ConfigError("degradation sigma must be >= 0");
  if (params.min_latency_floor < SimTime()) throw ConfigError("degradation floor must be >= 0");
}

SimTime sample_delay(const DegradationParams& params, RngStream& stream) {
  const double d = normal_sample(stream, params.mean_latency.to_seconds(), params.jitter_sigma.to_seconds());
  return std::max(params.min_latency_floor, SimTime::from_seconds(d));
}

ImpairmentEngine::ImpairmentEngine(Engine& engine, DegradationParams params, RngStream stream,
                                   PacketHandler deliver)
    : engine_(engine), params_(params), stream_(stream), deliver_(std::move(deliver)) {
  validate(params_);
}

void ImpairmentEngine::degrade(Packet p) {
  ++submitted_;
  const SimTime delay = sample_delay(params_, stream_);
  engine_.schedule_in(delay, [this, p = std::move(p)]() mutable { deliver_(std::move(p)); });
}

}  // namespace v1sim::degrade
