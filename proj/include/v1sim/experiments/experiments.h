#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "v1sim/endpoints/throughput.h"
#include "v1sim/experiments/config.h"
#include "v1sim/experiments/testbed.h"
#include "v1sim/metrics/ledger.h"
#include "v1sim/metrics/rtt.h"

namespace v1sim::experiments {

// A run whose packet ledger does not balance; its output must not be used.
class AuditFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fig3Row {
  double rate_bps = 0.0;
  SimTime sigma;
  metrics::FlowLedger mobile;
  double per = 0.0;
  uint64_t budget_drops = 0;
  uint64_t forced = 0;
  uint64_t events = 0;
};

struct Fig4Result {
  Mode mode = Mode::kPon;
  double rate_bps = 0.0;
  SimTime source_start;
  std::vector<endpoints::ThroughputSample> series;
  std::optional<SimTime> t95;
  double steady_bps = 0.0;
  metrics::FlowLedger mobile;
  metrics::FlowLedger overload;
  uint64_t pon_cycles = 0;
  uint64_t pon_capacity_violations = 0;
  uint64_t events = 0;
};

struct Tab1Row {
  Mode mode = Mode::kPon;
  metrics::RttSummary rtt;
  uint64_t probes_sent = 0;
  // More than 1% of probes never came back.
  bool incomplete_warning = false;
  uint64_t pon_capacity_violations = 0;
};

Fig3Row run_fig3_cell(const ScenarioConfig& cfg, double rate_bps, SimTime sigma);
Fig4Result run_fig4_cell(const ScenarioConfig& cfg, Mode mode, double rate_bps);
Tab1Row run_tab1_cell(const ScenarioConfig& cfg, Mode mode);

// Sweeps. Cells may run on up to `jobs` threads; results come back in grid
// order regardless. Any cell failing its audit throws AuditFailure.
std::vector<Fig3Row> run_fig3(const ScenarioConfig& cfg, unsigned jobs = 1);
std::vector<Fig4Result> run_fig4(const ScenarioConfig& cfg, unsigned jobs = 1);
std::vector<Tab1Row> run_tab1(const ScenarioConfig& cfg, unsigned jobs = 1);

// Single PON uplink run (mobile.rate against the overload) with the
// per-cycle DBA trace recorded.
RunResult run_grants_log(const ScenarioConfig& cfg);

}  // namespace v1sim::experiments
