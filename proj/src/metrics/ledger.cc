#include "v1sim/metrics/ledger.h"

#include <fmt/format.h>

#include <stdexcept>

namespace v1sim::metrics {

AuditResult conservation_audit(const LedgerSet& ledgers) {
  AuditResult r;
  for (FlowId f : kAllFlows) {
    const FlowLedger& l = ledgers[flow_index(f)];
    const uint64_t accounted = l.accepted + l.late + l.held + l.dropped + l.in_flight;
    if (accounted != l.sent) {
      r.pass = false;
      r.mismatches.push_back(fmt::format("{}: sent {} != accepted {} + late {} + held {} + dropped {} + in_flight {}",
                                         flow_name(f), l.sent, l.accepted, l.late, l.held, l.dropped,
                                         l.in_flight));
    }
    if (l.gap_loss > l.in_flight) {
      r.pass = false;
      r.mismatches.push_back(
          fmt::format("{}: gap_loss {} exceeds in_flight {}", flow_name(f), l.gap_loss, l.in_flight));
    }
  }
  return r;
}

double per(const FlowLedger& ledger) {
  if (ledger.sent == 0) throw std::domain_error("PER undefined: no packets sent");
  return static_cast<double>(ledger.late + ledger.dropped + ledger.gap_loss) / static_cast<double>(ledger.sent);
}

void PacketTracker::inject(FlowId flow, uint64_t seq) {
  if (!live_[flow_index(flow)].insert(seq).second) ++violations_;
}

void PacketTracker::terminate(FlowId flow, uint64_t seq) {
  if (live_[flow_index(flow)].erase(seq) == 0) ++violations_;
}

}  // namespace v1sim::metrics
