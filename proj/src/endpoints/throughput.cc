#include "v1sim/endpoints/throughput.h"

#include "v1sim/sim/errors.h"

namespace v1sim::endpoints {

std::vector<ThroughputSample> windowed_throughput(std::span<const Arrival> arrivals, SimTime origin,
                                                  SimTime end, SimTime window, SimTime step) {
  if (window <= SimTime() || step <= SimTime()) throw ConfigError("throughput window and step must be > 0");
  std::vector<ThroughputSample> out;
  size_t head = 0;  // first arrival with at > t
  size_t tail = 0;  // first arrival with at > t - window
  uint64_t bytes = 0;
  for (SimTime t = origin + step; t <= end; t += step) {
    while (head < arrivals.size() && arrivals[head].at <= t) bytes += arrivals[head++].bytes;
    while (tail < head && arrivals[tail].at <= t - window) bytes -= arrivals[tail++].bytes;
    out.push_back({t, static_cast<double>(bytes) * 8.0 / window.to_seconds()});
  }
  return out;
}

std::optional<SimTime> t95_convergence(std::span<const ThroughputSample> series, double target_bps,
                                       SimTime source_start, SimTime hold) {
  if (series.empty()) throw ConfigError("t95: empty series");
  if (!(target_bps > 0)) throw ConfigError("t95: target must be > 0");
  const double threshold = 0.95 * target_bps;
  std::optional<size_t> candidate;
  for (size_t i = 0; i < series.size(); ++i) {
    if (series[i].t < source_start) continue;
    if (series[i].bps < threshold) {
      candidate.reset();
      continue;
    }
    if (!candidate) candidate = i;
    if (series[i].t - series[*candidate].t >= hold) return series[*candidate].t - source_start;
  }
  return std::nullopt;
}

}  // namespace v1sim::endpoints
