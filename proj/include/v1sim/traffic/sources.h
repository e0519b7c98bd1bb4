#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "v1sim/sim/engine.h"
#include "v1sim/sim/rng.h"
#include "v1sim/traffic/packet.h"

namespace v1sim {

struct CbrProfile {
  double rate_bps = 0.0;
  uint32_t packet_size_bytes = 0;
  SimTime start_at;
  // Rate rises linearly from 0 to rate_bps over this span; zero is a step.
  SimTime ramp_duration;
  std::optional<uint64_t> packet_limit;
  std::optional<SimTime> stop_at;
};

void validate(const CbrProfile& profile);

// Steady-state inter-departure time, floor(size * 8e9 / rate) ns.
SimTime cbr_interval(const CbrProfile& profile);

// Departure instant of packet k (k = 0, 1, ...).
SimTime cbr_emission_time(const CbrProfile& profile, uint64_t k);

class CbrSource {
 public:
  CbrSource(Engine& engine, FlowId flow, CbrProfile profile, PacketHandler emit);

  void start();

  uint64_t sent_packets() const { return sent_packets_; }
  uint64_t sent_bytes() const { return sent_packets_ * profile_.packet_size_bytes; }
  const CbrProfile& profile() const { return profile_; }

 private:
  void fire();

  Engine& engine_;
  FlowId flow_;
  CbrProfile profile_;
  PacketHandler emit_;
  uint64_t next_k_ = 0;
  uint64_t sent_packets_ = 0;
};

struct ProbeRecord {
  uint64_t probe_seq = 0;
  SimTime sent_at;
  std::optional<SimTime> echoed_at;

  std::optional<SimTime> rtt() const {
    if (!echoed_at) return std::nullopt;
    return *echoed_at - sent_at;
  }
};

// Pairs echoed probes with their send records by sequence number.
class ProbeMatcher {
 public:
  void record_sent(uint64_t seq, SimTime at);
  // Returns false for an echo with unknown or already-matched seq; such
  // echoes are counted in unmatched().
  bool on_echo(uint64_t seq, SimTime at);

  const std::vector<ProbeRecord>& records() const { return records_; }
  uint64_t unmatched() const { return unmatched_; }
  uint64_t completed() const { return completed_; }

 private:
  std::vector<ProbeRecord> records_;
  uint64_t unmatched_ = 0;
  uint64_t completed_ = 0;
};

// Emits `count` small probe packets, one per `period`, registering each with
// the matcher. With a phase stream each probe leaves at a uniform offset
// inside its period, so probes do not lock onto any periodic schedule.
class ProbeSource {
 public:
  ProbeSource(Engine& engine, SimTime start_at, SimTime period, uint64_t count,
              uint32_t size_bytes, ProbeMatcher& matcher, PacketHandler emit,
              std::optional<RngStream> phase = std::nullopt);

  void start();
  uint64_t sent_packets() const { return sent_; }

 private:
  void fire();
  void schedule_next();

  Engine& engine_;
  SimTime start_at_;
  SimTime period_;
  uint64_t count_;
  uint32_t size_bytes_;
  ProbeMatcher& matcher_;
  PacketHandler emit_;
  std::optional<RngStream> phase_;
  uint64_t sent_ = 0;
};

}  // namespace v1sim
