#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "v1sim/degrade/impairment.h"
#include "v1sim/degrade/vlan_switch.h"
#include "v1sim/endpoints/du_endpoint.h"
#include "v1sim/endpoints/host_stack.h"
#include "v1sim/endpoints/receiver_budget.h"
#include "v1sim/endpoints/throughput.h"
#include "v1sim/experiments/config.h"
#include "v1sim/metrics/ledger.h"
#include "v1sim/net/fifo_link.h"
#include "v1sim/pon/upstream.h"
#include "v1sim/sim/engine.h"
#include "v1sim/traffic/sink.h"
#include "v1sim/traffic/sources.h"

namespace v1sim::experiments {

struct ProbePlan {
  SimTime start;
  SimTime period;
  uint64_t count = 0;
  uint32_t size_bytes = 64;
};

// What runs on top of the topology for one experiment cell.
struct RunPlan {
  Mode mode = Mode::kPon;
  std::optional<CbrProfile> downlink_mobile;
  std::optional<CbrProfile> uplink_mobile;
  bool downlink_overload = false;  // fluid background on the shared downlink FIFOs
  bool uplink_overload = false;    // packet-level, from t = 0
  std::optional<degrade::DegradationParams> downlink_degrade;
  std::optional<degrade::DegradationParams> uplink_degrade;
  std::optional<ProbePlan> probes;
  bool record_uplink_arrivals = false;
  bool record_grants = false;
};

struct RunResult {
  metrics::LedgerSet ledgers{};
  metrics::AuditResult audit;
  uint64_t tracker_violations = 0;
  uint64_t misrouted = 0;
  std::vector<endpoints::Arrival> uplink_mobile_arrivals;
  std::vector<ProbeRecord> probes;
  uint64_t reorder_forced = 0;
  uint64_t budget_drops = 0;
  uint64_t pon_cycles = 0;
  uint64_t pon_capacity_violations = 0;
  uint64_t pon_capacity_bytes = 0;
  std::vector<pon::GrantLogEntry> grant_log;
  uint64_t events = 0;
  SimTime ended_at;
};

// Testbed topology. Downlink: CU -> [degrade] -> switch trunk -> [OLT
// downstream FIFO + fiber] -> switch egress -> DU host stack -> receiver
// budget -> reorder buffer. Uplink: UE -> [degrade] -> switch port ->
// [ONU T-CONT -> TDMA + fiber] -> trunk -> egress -> CU host stack -> CU.
// B2B drops the bracketed PON segments and nothing else.
class Testbed {
 public:
  Testbed(const ScenarioConfig& cfg, RunPlan plan);
  Testbed(const Testbed&) = delete;
  Testbed& operator=(const Testbed&) = delete;
  ~Testbed();

  // Runs to `end` and assembles the ledger and audit.
  RunResult run(SimTime end);

  Engine& engine() { return engine_; }

 private:
  struct Impl;

  Engine engine_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace v1sim::experiments
