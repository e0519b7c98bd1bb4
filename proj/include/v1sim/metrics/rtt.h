#pragma once

#include <cstdint>
#include <span>

#include "v1sim/traffic/sources.h"

namespace v1sim::metrics {

struct RttSummary {
  double min_ms = 0.0;
  double average_ms = 0.0;
  double max_ms = 0.0;
  double std_ms = 0.0;  // sample (n-1) standard deviation
  uint64_t sample_count = 0;
  uint64_t incomplete = 0;
};

// Summary over completed probes. Throws std::domain_error with fewer than two.
RttSummary summarize_rtt(std::span<const ProbeRecord> records);

}  // namespace v1sim::metrics
