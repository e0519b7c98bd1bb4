#include "v1sim/experiments/csv.h"

#include <fmt/format.h>

#include <map>

namespace v1sim::experiments {

namespace {

std::string prefix(const ScenarioConfig& cfg) {
  return fmt::format("{},{},{}", kSchemaVersion, config_hash(cfg), cfg.seed);
}

constexpr std::string_view kPrefixHeader = "schema_version,config_hash,seed";

}  // namespace

std::string fig3_csv(const ScenarioConfig& cfg, std::span<const Fig3Row> rows) {
  std::string out = fmt::format(
      "{},mode,rate_bps,sigma_ns,per,sent,accepted,late,gap_loss,dropped,held,in_flight,budget_drops\n",
      kPrefixHeader);
  const std::string pre = prefix(cfg);
  for (const Fig3Row& r : rows) {
    const auto& l = r.mobile;
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", pre, mode_name(cfg.fig3_mode), r.rate_bps,
                       r.sigma.ns(), r.per, l.sent, l.accepted, l.late, l.gap_loss, l.dropped, l.held, l.in_flight,
                       r.budget_drops);
  }
  return out;
}

std::string fig4_series_csv(const ScenarioConfig& cfg, std::span<const Fig4Result> runs) {
  std::string out = fmt::format("{},mode,rate_bps,time_ms,throughput_bps\n", kPrefixHeader);
  const std::string pre = prefix(cfg);
  for (const Fig4Result& r : runs) {
    for (const auto& s : r.series) {
      out += fmt::format("{},{},{},{},{}\n", pre, mode_name(r.mode), r.rate_bps, (s.t - r.source_start).to_ms(),
                         s.bps);
    }
  }
  return out;
}

std::string fig4_summary_csv(const ScenarioConfig& cfg, std::span<const Fig4Result> runs) {
  std::string out = fmt::format(
      "{},mode,rate_bps,t95_ms,steady_bps,sent,accepted,dropped,in_flight,pon_cycles,capacity_violations\n",
      kPrefixHeader);
  const std::string pre = prefix(cfg);
  for (const Fig4Result& r : runs) {
    const std::string t95 = r.t95 ? fmt::format("{}", r.t95->to_ms()) : "not_converged";
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", pre, mode_name(r.mode), r.rate_bps, t95, r.steady_bps,
                       r.mobile.sent, r.mobile.accepted, r.mobile.dropped, r.mobile.in_flight, r.pon_cycles,
                       r.pon_capacity_violations);
  }
  return out;
}

std::string tab1_csv(const ScenarioConfig& cfg, std::span<const Tab1Row> rows) {
  std::string out =
      fmt::format("{},mode,min_ms,average_ms,max_ms,std_ms,samples,incomplete,warning\n", kPrefixHeader);
  const std::string pre = prefix(cfg);
  for (const Tab1Row& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", pre, mode_name(r.mode), r.rtt.min_ms, r.rtt.average_ms,
                       r.rtt.max_ms, r.rtt.std_ms, r.rtt.sample_count, r.rtt.incomplete,
                       r.incomplete_warning ? "incomplete_probes" : "");
  }
  return out;
}

std::string grants_csv(const ScenarioConfig& cfg, std::span<const pon::GrantLogEntry> log) {
  std::string out = fmt::format(
      "{},cycle,cycle_start_ns,tcont_id,backlog_bytes,smoothed_demand,granted_bytes,sent_bytes\n", kPrefixHeader);
  const std::string pre = prefix(cfg);
  for (const auto& e : log) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", pre, e.cycle, e.cycle_start.ns(), e.tcont_id, e.backlog_bytes,
                       e.smoothed_demand, e.granted_bytes, e.sent_bytes);
  }
  return out;
}

std::string fig3_summary_text(std::span<const Fig3Row> rows) {
  std::map<int64_t, std::map<double, double>> grid;  // sigma -> rate -> PER
  std::map<double, bool> rates;
  for (const Fig3Row& r : rows) {
    grid[r.sigma.ns()][r.rate_bps] = r.per;
    rates[r.rate_bps] = true;
  }
  std::string out = fmt::format("{:>12}", "rate Mb/s");
  for (const auto& [sigma, _] : grid) out += fmt::format("{:>16}", fmt::format("PER s={}ms", sigma / 1e6));
  out += '\n';
  for (const auto& [rate, _] : rates) {
    out += fmt::format("{:>12}", rate / 1e6);
    for (const auto& [sigma, per_by_rate] : grid) {
      auto it = per_by_rate.find(rate);
      out += it == per_by_rate.end() ? fmt::format("{:>16}", "-") : fmt::format("{:>16.3e}", it->second);
    }
    out += '\n';
  }
  return out;
}

std::string fig4_summary_text(std::span<const Fig4Result> runs) {
  std::string out = fmt::format("{:>6}{:>12}{:>12}{:>16}\n", "mode", "rate Mb/s", "t95 ms", "steady Mb/s");
  for (const Fig4Result& r : runs) {
    const std::string t95 = r.t95 ? fmt::format("{}", r.t95->to_ms()) : "n/c";
    out += fmt::format("{:>6}{:>12}{:>12}{:>16.3f}\n", mode_name(r.mode), r.rate_bps / 1e6, t95, r.steady_bps / 1e6);
  }
  return out;
}

std::string tab1_summary_text(std::span<const Tab1Row> rows) {
  std::string out = fmt::format("{:>14}", "RTT (ms)");
  for (const Tab1Row& r : rows) out += fmt::format("{:>10}", mode_name(r.mode));
  out += '\n';
  const auto line = [&](std::string_view name, double metrics::RttSummary::*m) {
    out += fmt::format("{:>14}", name);
    for (const Tab1Row& r : rows) out += fmt::format("{:>10.3f}", r.rtt.*m);
    out += '\n';
  };
  line("min", &metrics::RttSummary::min_ms);
  line("average", &metrics::RttSummary::average_ms);
  line("max", &metrics::RttSummary::max_ms);
  line("std deviation", &metrics::RttSummary::std_ms);
  return out;
}

}  // namespace v1sim::experiments
