#pragma once

#include <cstdint>
#include <vector>

#include "v1sim/pon/dba.h"
#include "v1sim/pon/tcont.h"
#include "v1sim/sim/engine.h"
#include "v1sim/traffic/packet.h"

namespace v1sim::pon {

struct UpstreamConfig {
  double line_rate_bps = 9.95328e9;
  double capacity_bps = 8.64e9;
  SimTime cycle = SimTime::microseconds(125);
  SimTime ema_tau = SimTime::milliseconds(30);
  SimTime propagation;
  bool fragmentation = true;
  std::vector<TContProfile> tconts;
  bool record_grants = false;
};

struct GrantLogEntry {
  uint64_t cycle = 0;
  SimTime cycle_start;
  uint32_t tcont_id = 0;
  uint64_t backlog_bytes = 0;  // report the allocation was based on
  double smoothed_demand = 0.0;
  uint64_t granted_bytes = 0;
  uint64_t sent_bytes = 0;
};

// ONU T-CONT queues plus the OLT's per-cycle status-reporting DBA.
//
// At each cycle boundary t_k the OLT allocates from the reports taken at
// t_{k-1}; each T-CONT then bursts its grant in tcont_id order, bursts
// packed back to back from t_k at line rate; finally the ONU snapshots
// occupancy for the allocation at t_{k+1}.
class UpstreamTdma {
 public:
  UpstreamTdma(Engine& engine, UpstreamConfig config, PacketHandler at_olt);

  void start(SimTime first_cycle);
  bool enqueue(uint32_t tcont_id, Packet p);

  const TContQueue& queue(uint32_t tcont_id) const;
  uint64_t capacity_bytes() const { return capacity_bytes_; }
  uint64_t cycles() const { return cycles_; }
  uint64_t capacity_violations() const { return capacity_violations_; }
  uint64_t oversubscribed_cycles() const { return oversubscribed_cycles_; }
  const DbaState& dba_state() const { return dba_; }
  const std::vector<GrantLogEntry>& grant_log() const { return log_; }

  // Grant accounting over a window opened by mark_window().
  void mark_window();
  uint64_t window_granted(uint32_t tcont_id) const;
  uint64_t window_cycles() const { return cycles_ - window_start_cycle_; }

  uint64_t total_drops(FlowId f) const;

 private:
  void on_cycle();
  size_t index_of(uint32_t tcont_id) const;

  Engine& engine_;
  UpstreamConfig config_;
  PacketHandler at_olt_;
  std::vector<TContQueue> queues_;  // ascending tcont_id
  std::vector<TContProfile> profiles_;
  DbaState dba_;
  uint64_t capacity_bytes_;
  std::vector<OccupancyReport> reports_;
  uint64_t cycles_ = 0;
  uint64_t capacity_violations_ = 0;
  uint64_t oversubscribed_cycles_ = 0;
  std::vector<uint64_t> granted_total_;
  std::vector<uint64_t> granted_at_mark_;
  uint64_t window_start_cycle_ = 0;
  std::vector<GrantLogEntry> log_;
};

}  // namespace v1sim::pon
