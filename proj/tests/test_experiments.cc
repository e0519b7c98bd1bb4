#include <gtest/gtest.h>

#include <string>

#include "v1sim/experiments/config.h"
#include "v1sim/experiments/csv.h"
#include "v1sim/experiments/experiments.h"
#include "v1sim/experiments/testbed.h"
#include "v1sim/sim/errors.h"

using namespace v1sim;
using namespace v1sim::experiments;

TEST(Config, RateAndTimeUnits) {
  const ParseResult r = parse_config("pon.assured = 150Mbps\ndegrade.sigma = 0.66ms\n");
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r.config.pon_assured_mobile_bps, 150e6);
  EXPECT_EQ(r.config.degrade.jitter_sigma, SimTime::microseconds(660));
}

TEST(Config, ScalarParsers) {
  EXPECT_DOUBLE_EQ(parse_rate("8.5Gbps"), 8.5e9);
  EXPECT_DOUBLE_EQ(parse_rate("100 kbps"), 1e5);
  EXPECT_EQ(parse_time("125us"), SimTime::microseconds(125));
  EXPECT_EQ(parse_time("2ms"), SimTime::milliseconds(2));
  EXPECT_EQ(parse_bytes("1MB"), 1'000'000u);
  EXPECT_DOUBLE_EQ(parse_length_km("10km"), 10.0);
  EXPECT_DOUBLE_EQ(parse_length_km("500m"), 0.5);
  EXPECT_EQ(parse_time("0"), SimTime());
  EXPECT_THROW(parse_rate("150"), ConfigError);
  EXPECT_THROW(parse_time("3 parsecs"), ConfigError);
}

TEST(Config, NegativeRateRejectedWithLine) {
  const ParseResult r = parse_config("# comment\npon.assured = -5Mbps\n");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].line, 2);
  EXPECT_EQ(r.diagnostics[0].key, "pon.assured");
}

TEST(Config, EveryProblemIsReported) {
  const ParseResult r = parse_config(
      "seed = 3\n"
      "pon.bogus = 1\n"
      "mobile.rate = 150\n"
      "this line is junk\n"
      "pon.cycle = 125us\n");
  ASSERT_EQ(r.diagnostics.size(), 3u);
  EXPECT_EQ(r.diagnostics[0].line, 2);
  EXPECT_EQ(r.diagnostics[0].message, "unknown key");
  EXPECT_EQ(r.diagnostics[1].line, 3);
  EXPECT_EQ(r.diagnostics[1].key, "mobile.rate");
  EXPECT_EQ(r.diagnostics[2].line, 4);
  EXPECT_EQ(format_diagnostic(r.diagnostics[0], "a.conf"), "a.conf:2: pon.bogus: unknown key");
}

TEST(Config, ValidationFindsCrossFieldErrors) {
  const ParseResult r = parse_config("pon.assured = 9Gbps\npon.capacity = 8.64Gbps\n");
  EXPECT_FALSE(r.ok());
}

TEST(Config, OverridesApplyAfterTheFile) {
  const ParseResult r = parse_config("seed = 3\n", {"seed=9", "mode = b2b"});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.config.seed, 9u);
  EXPECT_EQ(r.config.mode, Mode::kB2B);
  EXPECT_FALSE(parse_config("", {"nonsense"}).ok());
}

TEST(Config, HashIsStableAndSpellingInvariant) {
  const ScenarioConfig d;
  EXPECT_EQ(config_hash(d), config_hash(d));
  EXPECT_EQ(config_hash(d).size(), 16u);
  const auto a = parse_config("mobile.rate = 150Mbps\n");
  const auto b = parse_config("mobile.rate = 0.15Gbps\n");
  EXPECT_EQ(config_hash(a.config), config_hash(b.config));
  const auto c = parse_config("mobile.rate = 151Mbps\n");
  EXPECT_NE(config_hash(a.config), config_hash(c.config));
}

TEST(Config, CanonicalDumpRoundTrips) {
  ScenarioConfig cfg;
  cfg.seed = 42;
  cfg.pon_cycle = SimTime::microseconds(250);
  cfg.degrade.jitter_sigma = SimTime::microseconds(330);
  cfg.fig3_rates_bps = {10e6, 30e6};
  const ParseResult r = parse_config(canonical_dump(cfg));
  ASSERT_TRUE(r.ok()) << format_diagnostic(r.diagnostics.front(), "dump");
  EXPECT_EQ(canonical_dump(r.config), canonical_dump(cfg));
  EXPECT_EQ(config_hash(r.config), config_hash(cfg));
}

namespace {

ScenarioConfig small_fig3() {
  ScenarioConfig cfg;
  cfg.fig3_packets = 20000;
  return cfg;
}

}  // namespace

TEST(Scenario, ZeroJitterIsTransparentAtLowRates) {
  const ScenarioConfig cfg = small_fig3();
  for (double rate : {20e6, 40e6, 60e6}) {
    const Fig3Row row = run_fig3_cell(cfg, rate, SimTime());
    EXPECT_EQ(row.mobile.sent, 20000u);
    EXPECT_EQ(row.mobile.accepted, 20000u) << rate;
    EXPECT_EQ(row.per, 0.0) << rate;
  }
}

TEST(Scenario, JitterCausesLateArrivals) {
  const Fig3Row row = run_fig3_cell(small_fig3(), 100e6, SimTime::microseconds(660));
  EXPECT_GT(row.mobile.late + row.mobile.gap_loss, 0u);
  EXPECT_GT(row.per, 0.01);
}

TEST(Scenario, RepeatRunsAreByteIdentical) {
  ScenarioConfig cfg = small_fig3();
  cfg.fig3_rates_bps = {100e6};
  cfg.fig3_sigmas = {SimTime::microseconds(660)};
  const auto a = run_fig3(cfg);
  const auto b = run_fig3(cfg);
  EXPECT_EQ(fig3_csv(cfg, a), fig3_csv(cfg, b));
  cfg.seed = 2;
  const auto c = run_fig3(cfg);
  EXPECT_NE(a[0].mobile.late, c[0].mobile.late);
}

TEST(Scenario, CsvLeadsWithSchemaHashAndSeed) {
  ScenarioConfig cfg = small_fig3();
  cfg.fig3_rates_bps = {20e6};
  cfg.fig3_sigmas = {SimTime()};
  const std::string csv = fig3_csv(cfg, run_fig3(cfg));
  const std::string second_line = csv.substr(csv.find('\n') + 1);
  const std::string prefix = std::to_string(kSchemaVersion) + "," + config_hash(cfg) + "," + std::to_string(cfg.seed) + ",";
  EXPECT_EQ(csv.rfind("schema_version,config_hash,seed,", 0), 0u);
  EXPECT_EQ(second_line.rfind(prefix, 0), 0u);
}

TEST(Scenario, TruncatedRunStillBalances) {
  ScenarioConfig cfg;
  RunPlan plan;
  plan.mode = Mode::kPon;
  CbrProfile p;
  p.rate_bps = 100e6;
  p.packet_size_bytes = 1200;
  p.packet_limit = 10000;
  plan.downlink_mobile = p;
  plan.downlink_degrade = cfg.degrade;
  Testbed bed(cfg, plan);
  const RunResult r = bed.run(SimTime::milliseconds(50));
  const auto& m = r.ledgers[flow_index(FlowId::kMobileV1)];
  EXPECT_TRUE(r.audit.pass);
  EXPECT_GT(m.in_flight, 0u);
  EXPECT_LT(m.accepted, m.sent);
  EXPECT_EQ(r.tracker_violations, 0u);
  EXPECT_EQ(r.misrouted, 0u);
}

TEST(Scenario, UplinkOverloadRunBalances) {
  ScenarioConfig cfg;
  RunPlan plan;
  plan.mode = Mode::kPon;
  CbrProfile p;
  p.rate_bps = 150e6;
  p.packet_size_bytes = 1200;
  p.start_at = SimTime::milliseconds(20);
  plan.uplink_mobile = p;
  plan.uplink_overload = true;
  Testbed bed(cfg, plan);
  const RunResult r = bed.run(SimTime::milliseconds(100));
  EXPECT_TRUE(r.audit.pass);
  EXPECT_EQ(r.tracker_violations, 0u);
  EXPECT_EQ(r.pon_capacity_violations, 0u);
  EXPECT_GT(r.ledgers[flow_index(FlowId::kOverload)].accepted, 0u);
  EXPECT_GT(r.pon_cycles, 200u);
}

TEST(Scenario, TwoMobileDirectionsRejected) {
  ScenarioConfig cfg;
  RunPlan plan;
  CbrProfile p;
  p.rate_bps = 10e6;
  p.packet_size_bytes = 1200;
  plan.downlink_mobile = p;
  plan.uplink_mobile = p;
  EXPECT_THROW(Testbed(cfg, plan), ConfigError);
}

TEST(Scenario, ProbesInB2BHaveAFloor) {
  ScenarioConfig cfg;
  cfg.tab1_probes = 200;
  const Tab1Row row = run_tab1_cell(cfg, Mode::kB2B);
  EXPECT_EQ(row.rtt.sample_count, 200u);
  EXPECT_GE(row.rtt.min_ms, 0.4);
  EXPECT_FALSE(row.incomplete_warning);
}

TEST(Config, ShippedDefaultConfigMatchesBuiltIns) {
  const ParseResult r = load_config(V1SIM_SOURCE_DIR "/configs/default.conf");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(config_hash(r.config), config_hash(ScenarioConfig{}));
}

TEST(Config, UnreadableFileIsADiagnostic) {
  const ParseResult r = load_config("/nonexistent/x.conf");
  ASSERT_EQ(r.diagnostics.size(), 1u);
}
