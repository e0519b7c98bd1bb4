#include "v1sim/pon/upstream.h"

#include <algorithm>
#include <string>

#include "v1sim/sim/errors.h"

namespace v1sim::pon {

UpstreamTdma::UpstreamTdma(Engine& engine, UpstreamConfig config, PacketHandler at_olt)
    : engine_(engine),
      config_(std::move(config)),
      at_olt_(std::move(at_olt)),
      capacity_bytes_(cycle_capacity_bytes(config_.capacity_bps, config_.cycle)) {
  if (config_.capacity_bps > config_.line_rate_bps) {
    throw ConfigError("upstream capacity exceeds line rate");
  }
  profiles_ = config_.tconts;
  std::sort(profiles_.begin(), profiles_.end(),
            [](const auto& a, const auto& b) { return a.tcont_id < b.tcont_id; });
  for (size_t i = 1; i < profiles_.size(); ++i) {
    if (profiles_[i].tcont_id == profiles_[i - 1].tcont_id) throw ConfigError("duplicate tcont_id");
  }
  double assured = 0.0;
  for (const auto& p : profiles_) {
    queues_.emplace_back(p, config_.fragmentation);
    assured += p.assured_bps;
  }
  if (assured > config_.capacity_bps) throw ConfigError("assured rates exceed upstream capacity");
  dba_.ema_alpha = ema_alpha_for(config_.cycle, config_.ema_tau);
  dba_.cycle_period = config_.cycle;
  granted_total_.assign(profiles_.size(), 0);
  granted_at_mark_.assign(profiles_.size(), 0);
}

size_t UpstreamTdma::index_of(uint32_t tcont_id) const {
  for (size_t i = 0; i < profiles_.size(); ++i) {
    if (profiles_[i].tcont_id == tcont_id) return i;
  }
  throw SimulationFault("unknown tcont_id " + std::to_string(tcont_id));
}

void UpstreamTdma::start(SimTime first_cycle) {
  engine_.schedule(first_cycle, [this] { on_cycle(); });
}

bool UpstreamTdma::enqueue(uint32_t tcont_id, Packet p) {
  return queues_[index_of(tcont_id)].upstream_enqueue(std::move(p));
}

const TContQueue& UpstreamTdma::queue(uint32_t tcont_id) const { return queues_[index_of(tcont_id)]; }

uint64_t UpstreamTdma::total_drops(FlowId f) const {
  uint64_t n = 0;
  for (const auto& q : queues_) n += q.drops(f);
  return n;
}

void UpstreamTdma::mark_window() {
  granted_at_mark_ = granted_total_;
  window_start_cycle_ = cycles_;
}

uint64_t UpstreamTdma::window_granted(uint32_t tcont_id) const {
  const size_t i = index_of(tcont_id);
  return granted_total_[i] - granted_at_mark_[i];
}

void UpstreamTdma::on_cycle() {
  const SimTime start = engine_.now();
  std::vector<uint64_t> backlog_seen(profiles_.size(), 0);
  for (const auto& r : reports_) backlog_seen[index_of(r.tcont_id)] = r.reported_bytes;

  const GrantMap map = dba_allocate(reports_, dba_, capacity_bytes_, profiles_, start);
  if (map.total() > capacity_bytes_) {
    ++capacity_violations_;
    throw SimulationFault("grant map exceeds cycle capacity: " + std::to_string(map.total()) + " > " +
                          std::to_string(capacity_bytes_));
  }
  if (map.assured_oversubscribed) ++oversubscribed_cycles_;

  reports_.clear();
  uint64_t burst_base = 0;
  for (size_t i = 0; i < queues_.size(); ++i) {
    const uint32_t id = profiles_[i].tcont_id;
    const uint64_t grant = map.granted(id);
    ServeResult served = queues_[i].serve(grant);
    for (auto& d : served.departures) {
      const double bits = static_cast<double>((burst_base + d.burst_end_offset) * 8);
      const SimTime arrive = start + SimTime::from_seconds(bits / config_.line_rate_bps) + config_.propagation;
      engine_.schedule(arrive, [this, p = std::move(d.packet)]() mutable { at_olt_(std::move(p)); });
    }
    burst_base += grant;
    granted_total_[i] += grant;
    reports_.push_back(OccupancyReport{id, queues_[i].occupancy_bytes(), served.bytes_sent, start});
    if (config_.record_grants) {
      log_.push_back(GrantLogEntry{cycles_, start, id, backlog_seen[i], dba_.smoothed_demand(id), grant,
                                   served.bytes_sent});
    }
  }
  ++cycles_;
  engine_.schedule(start + config_.cycle, [this] { on_cycle(); });
}

}  // namespace v1sim::pon
