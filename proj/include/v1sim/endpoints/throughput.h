#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "v1sim/sim/time.h"

namespace v1sim::endpoints {

struct Arrival {
  SimTime at;
  uint32_t bytes = 0;
};

struct ThroughputSample {
  SimTime t;
  double bps = 0.0;
};

// s(t) = bits arrived in (t - window, t] / window, sampled at
// origin + k*step for k >= 1 while t <= end. Arrivals must be time-sorted.
std::vector<ThroughputSample> windowed_throughput(std::span<const Arrival> arrivals, SimTime origin,
                                                  SimTime end, SimTime window = SimTime::milliseconds(10),
                                                  SimTime step = SimTime::milliseconds(1));

// First sample time t with s >= 0.95*target that stays there through
// t + hold, relative to source_start. nullopt when never sustained, including
// when the series ends before the hold completes.
std::optional<SimTime> t95_convergence(std::span<const ThroughputSample> series, double target_bps,
                                       SimTime source_start, SimTime hold = SimTime::milliseconds(50));

}  // namespace v1sim::endpoints
