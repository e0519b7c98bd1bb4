#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "v1sim/degrade/impairment.h"
#include "v1sim/sim/time.h"

namespace v1sim::experiments {

enum class Mode { kB2B, kPon };

std::string_view mode_name(Mode m);

struct ScenarioConfig {
  uint64_t seed = 1;
  Mode mode = Mode::kPon;

  // Mobile V1 flow.
  double mobile_rate_bps = 150e6;
  uint32_t mobile_packet_bytes = 1200;
  SimTime mobile_ramp = SimTime::milliseconds(55);
  SimTime mobile_start = SimTime::milliseconds(400);

  // Fixed-access overload. The two directions are stated differently in the
  // testbed description, so both are kept.
  double overload_uplink_bps = 8.5e9;
  double overload_downlink_bps = 8e9;
  uint32_t overload_packet_bytes = 1500;

  degrade::DegradationParams degrade;
  bool degrade_downlink = true;
  bool degrade_uplink = false;

  double switch_rate_bps = 10e9;
  uint64_t switch_buffer_bytes = 2'000'000;
  uint16_t vlan_mobile = 100;
  uint16_t vlan_overload = 200;

  double pon_line_rate_bps = 9.95328e9;
  double pon_capacity_bps = 8.64e9;
  SimTime pon_cycle = SimTime::microseconds(400);
  SimTime pon_ema_tau = SimTime::milliseconds(30);
  double pon_assured_mobile_bps = 150e6;
  double pon_assured_overload_bps = 150e6;
  uint64_t pon_tcont_queue_bytes = 1'000'000;
  bool pon_fragmentation = true;
  uint64_t pon_downstream_buffer_bytes = 2'000'000;
  double fiber_length_km = 10.0;
  double fiber_group_index = 1.468;

  SimTime host_base = SimTime::microseconds(200);
  SimTime host_jitter = SimTime::microseconds(20);
  SimTime du_deadline = SimTime::milliseconds(1);
  uint32_t du_capacity = 256;
  double budget_rate_bps = 160e6;
  uint32_t budget_depth = 12;

  Mode fig3_mode = Mode::kPon;
  std::vector<double> fig3_rates_bps = {20e6, 40e6, 60e6, 80e6, 100e6, 120e6, 140e6, 150e6};
  std::vector<SimTime> fig3_sigmas = {SimTime(), SimTime::microseconds(100), SimTime::microseconds(660)};
  uint64_t fig3_packets = 1'000'000;
  // Zero means no cap beyond the packet count.
  SimTime fig3_max_duration;
  bool fig3_overload = true;

  std::vector<double> fig4_rates_bps = {100e6, 150e6};
  SimTime fig4_duration = SimTime::milliseconds(1500);
  SimTime fig4_window = SimTime::milliseconds(10);
  SimTime fig4_step = SimTime::milliseconds(1);
  SimTime fig4_hold = SimTime::milliseconds(50);

  uint64_t tab1_probes = 1000;
  SimTime tab1_period = SimTime::milliseconds(10);
  uint32_t tab1_probe_bytes = 64;
  double tab1_mobile_rate_bps = 100e6;
  bool tab1_overload = true;
  bool tab1_degrade = false;
};

struct Diagnostic {
  int line = 0;  // 0 for command-line overrides
  std::string key;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d, std::string_view source);

struct ParseResult {
  ScenarioConfig config;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

// Parses `key = value` lines ('#' starts a comment) on top of the defaults,
// then applies `overrides` (each "key=value"), then validates. Every problem
// is reported, not only the first.
ParseResult parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

// Reads the file; an unreadable file yields a single diagnostic.
ParseResult load_config(const std::string& path, const std::vector<std::string>& overrides = {});

std::vector<Diagnostic> validate(const ScenarioConfig& cfg);

// Canonical key=value listing of every setting, one per line, in key order.
std::string canonical_dump(const ScenarioConfig& cfg);

// FNV-1a 64 of canonical_dump, as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

// Unit-suffixed scalar parsers; throw ConfigError with a readable message.
double parse_rate(std::string_view text);
SimTime parse_time(std::string_view text);
uint64_t parse_bytes(std::string_view text);
double parse_length_km(std::string_view text);

}  // namespace v1sim::experiments
