#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "v1sim/traffic/packet.h"

namespace v1sim::metrics {

// Per-flow end-of-run counters. Every sent packet is exactly one of
// accepted, late, held, dropped, or still in the network. gap_loss counts
// packets declared lost that are still in the network when the run ends.
struct FlowLedger {
  uint64_t sent = 0;
  uint64_t accepted = 0;
  uint64_t late = 0;
  uint64_t held = 0;
  uint64_t dropped = 0;
  uint64_t gap_loss = 0;
  uint64_t in_flight = 0;
};

using LedgerSet = std::array<FlowLedger, kFlowCount>;

struct AuditResult {
  bool pass = true;
  std::vector<std::string> mismatches;
};

AuditResult conservation_audit(const LedgerSet& ledgers);

// (late + dropped + gap_loss) / sent. Throws std::domain_error for sent == 0.
double per(const FlowLedger& ledger);

// Independent count of packets alive in the network, keyed by (flow, seq).
// A terminal event for an unknown or already-terminated packet is recorded as
// a violation rather than silently ignored.
class PacketTracker {
 public:
  void inject(FlowId flow, uint64_t seq);
  void terminate(FlowId flow, uint64_t seq);

  uint64_t alive(FlowId flow) const { return live_[flow_index(flow)].size(); }
  uint64_t violations() const { return violations_; }

 private:
  std::array<std::unordered_set<uint64_t>, kFlowCount> live_;
  uint64_t violations_ = 0;
};

}  // namespace v1sim::metrics
