#include "v1sim/experiments/experiments.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace v1sim::experiments {

namespace {

const SimTime kDrain = SimTime::milliseconds(100);
const SimTime kSteadySpan = SimTime::milliseconds(500);

void require_audit(const RunResult& r, std::string_view what) {
  if (!r.audit.pass) {
    throw AuditFailure(fmt::format("{}: conservation audit failed: {}", what, fmt::join(r.audit.mismatches, "; ")));
  }
}

void parallel_for(size_t n, unsigned jobs, const std::function<void(size_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

CbrProfile mobile_profile(const ScenarioConfig& cfg, double rate_bps, SimTime start, SimTime ramp) {
  CbrProfile p;
  p.rate_bps = rate_bps;
  p.packet_size_bytes = cfg.mobile_packet_bytes;
  p.start_at = start;
  p.ramp_duration = ramp;
  return p;
}

}  // namespace

Fig3Row run_fig3_cell(const ScenarioConfig& cfg, double rate_bps, SimTime sigma) {
  RunPlan plan;
  plan.mode = cfg.fig3_mode;
  CbrProfile prof = mobile_profile(cfg, rate_bps, SimTime(), SimTime());
  prof.packet_limit = cfg.fig3_packets;
  SimTime last = cbr_emission_time(prof, cfg.fig3_packets - 1);
  if (cfg.fig3_max_duration > SimTime() && cfg.fig3_max_duration < last) {
    prof.stop_at = cfg.fig3_max_duration;
    last = cfg.fig3_max_duration;
  }
  plan.downlink_mobile = prof;
  plan.downlink_overload = cfg.fig3_overload;
  if (cfg.degrade_downlink) {
    degrade::DegradationParams d = cfg.degrade;
    d.jitter_sigma = sigma;
    plan.downlink_degrade = d;
  }
  Testbed bed(cfg, plan);
  const RunResult r = bed.run(last + kDrain);
  require_audit(r, fmt::format("fig3 rate={} sigma={}", rate_bps, sigma.ns()));
  Fig3Row row;
  row.rate_bps = rate_bps;
  row.sigma = sigma;
  row.mobile = r.ledgers[flow_index(FlowId::kMobileV1)];
  row.per = metrics::per(row.mobile);
  row.budget_drops = r.budget_drops;
  row.forced = r.reorder_forced;
  row.events = r.events;
  return row;
}

Fig4Result run_fig4_cell(const ScenarioConfig& cfg, Mode mode, double rate_bps) {
  RunPlan plan;
  plan.mode = mode;
  plan.uplink_mobile = mobile_profile(cfg, rate_bps, cfg.mobile_start, cfg.mobile_ramp);
  plan.uplink_overload = true;
  if (cfg.degrade_uplink) plan.uplink_degrade = cfg.degrade;
  plan.record_uplink_arrivals = true;
  Testbed bed(cfg, plan);
  const RunResult r = bed.run(cfg.fig4_duration);
  require_audit(r, fmt::format("fig4 mode={} rate={}", mode_name(mode), rate_bps));

  Fig4Result out;
  out.mode = mode;
  out.rate_bps = rate_bps;
  out.source_start = cfg.mobile_start;
  out.series = endpoints::windowed_throughput(r.uplink_mobile_arrivals, cfg.mobile_start, cfg.fig4_duration,
                                              cfg.fig4_window, cfg.fig4_step);
  out.t95 = endpoints::t95_convergence(out.series, rate_bps, cfg.mobile_start, cfg.fig4_hold);
  const SimTime steady_from = cfg.fig4_duration - std::min(kSteadySpan, cfg.fig4_duration - cfg.mobile_start);
  uint64_t bytes = 0;
  for (const auto& a : r.uplink_mobile_arrivals) {
    if (a.at > steady_from) bytes += a.bytes;
  }
  out.steady_bps = static_cast<double>(bytes) * 8.0 / (cfg.fig4_duration - steady_from).to_seconds();
  out.mobile = r.ledgers[flow_index(FlowId::kMobileV1)];
  out.overload = r.ledgers[flow_index(FlowId::kOverload)];
  out.pon_cycles = r.pon_cycles;
  out.pon_capacity_violations = r.pon_capacity_violations;
  out.events = r.events;
  return out;
}

Tab1Row run_tab1_cell(const ScenarioConfig& cfg, Mode mode) {
  RunPlan plan;
  plan.mode = mode;
  plan.uplink_mobile = mobile_profile(cfg, cfg.tab1_mobile_rate_bps, SimTime(), cfg.mobile_ramp);
  plan.uplink_overload = cfg.tab1_overload;
  if (cfg.tab1_degrade) {
    if (cfg.degrade_downlink) plan.downlink_degrade = cfg.degrade;
    if (cfg.degrade_uplink) plan.uplink_degrade = cfg.degrade;
  }
  plan.probes = ProbePlan{cfg.mobile_start, cfg.tab1_period, cfg.tab1_probes, cfg.tab1_probe_bytes};
  Testbed bed(cfg, plan);
  const SimTime end = cfg.mobile_start + cfg.tab1_period * static_cast<int64_t>(cfg.tab1_probes) + kDrain;
  const RunResult r = bed.run(end);
  require_audit(r, fmt::format("tab1 mode={}", mode_name(mode)));
  Tab1Row row;
  row.mode = mode;
  row.rtt = metrics::summarize_rtt(r.probes);
  row.probes_sent = r.probes.size();
  row.incomplete_warning = row.rtt.incomplete * 100 > row.probes_sent;
  row.pon_capacity_violations = r.pon_capacity_violations;
  return row;
}

std::vector<Fig3Row> run_fig3(const ScenarioConfig& cfg, unsigned jobs) {
  struct Cell {
    double rate;
    SimTime sigma;
  };
  std::vector<Cell> cells;
  for (SimTime s : cfg.fig3_sigmas) {
    for (double r : cfg.fig3_rates_bps) cells.push_back({r, s});
  }
  std::vector<Fig3Row> rows(cells.size());
  parallel_for(cells.size(), jobs, [&](size_t i) { rows[i] = run_fig3_cell(cfg, cells[i].rate, cells[i].sigma); });
  return rows;
}

std::vector<Fig4Result> run_fig4(const ScenarioConfig& cfg, unsigned jobs) {
  struct Cell {
    Mode mode;
    double rate;
  };
  std::vector<Cell> cells;
  for (Mode m : {Mode::kB2B, Mode::kPon}) {
    for (double r : cfg.fig4_rates_bps) cells.push_back({m, r});
  }
  std::vector<Fig4Result> out(cells.size());
  parallel_for(cells.size(), jobs, [&](size_t i) { out[i] = run_fig4_cell(cfg, cells[i].mode, cells[i].rate); });
  return out;
}

std::vector<Tab1Row> run_tab1(const ScenarioConfig& cfg, unsigned jobs) {
  const Mode modes[] = {Mode::kB2B, Mode::kPon};
  std::vector<Tab1Row> rows(2);
  parallel_for(2, jobs, [&](size_t i) { rows[i] = run_tab1_cell(cfg, modes[i]); });
  return rows;
}

RunResult run_grants_log(const ScenarioConfig& cfg) {
  RunPlan plan;
  plan.mode = Mode::kPon;
  plan.uplink_mobile = mobile_profile(cfg, cfg.mobile_rate_bps, cfg.mobile_start, cfg.mobile_ramp);
  plan.uplink_overload = true;
  plan.record_grants = true;
  Testbed bed(cfg, plan);
  RunResult r = bed.run(cfg.fig4_duration);
  require_audit(r, "grants-log");
  return r;
}

}  // namespace v1sim::experiments
