#include "v1sim/metrics/rtt.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace v1sim::metrics {

RttSummary summarize_rtt(std::span<const ProbeRecord> records) {
  RttSummary s;
  std::vector<double> ms;
  for (const ProbeRecord& r : records) {
    if (auto rtt = r.rtt()) {
      ms.push_back(rtt->to_ms());
    } else {
      ++s.incomplete;
    }
  }
  if (ms.size() < 2) throw std::domain_error("RTT summary needs at least two completed probes");
  // Sorting makes the floating-point sums independent of input order.
  std::sort(ms.begin(), ms.end());
  double sum = 0.0;
  for (double v : ms) sum += v;
  const double n = static_cast<double>(ms.size());
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : ms) ss += (v - mean) * (v - mean);
  s.min_ms = ms.front();
  s.max_ms = ms.back();
  s.average_ms = mean;
  s.std_ms = std::sqrt(ss / (n - 1.0));
  s.sample_count = ms.size();
  return s;
}

}  // namespace v1sim::metrics
