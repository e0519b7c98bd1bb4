#include <gtest/gtest.h>

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "v1sim/degrade/impairment.h"
#include "v1sim/degrade/vlan_switch.h"
#include "v1sim/sim/errors.h"

using namespace v1sim;
using namespace v1sim::degrade;

namespace {

// Departure k at k*gap, independent delays; returns arrival times by seq.
std::vector<SimTime> run_stream(DegradationParams params, SimTime gap, int n, uint64_t seed = 1) {
  Engine e;
  std::vector<SimTime> arrival(n);
  ImpairmentEngine eng(e, params, RngStream(seed, StreamId::kDegradeDownlink),
                       [&](Packet p) { arrival[p.seq] = e.now(); });
  for (int k = 0; k < n; ++k) {
    e.schedule(gap * k, [&eng, k] {
      Packet p;
      p.seq = static_cast<uint64_t>(k);
      p.size_bytes = 1200;
      eng.degrade(p);
    });
  }
  e.run_until(SimTime::seconds(1000));
  return arrival;
}

double overtake_fraction(const std::vector<SimTime>& arrival) {
  int over = 0;
  for (size_t k = 0; k + 1 < arrival.size(); ++k) over += arrival[k + 1] < arrival[k];
  return static_cast<double>(over) / static_cast<double>(arrival.size() - 1);
}

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST(Impairment, ZeroSigmaIsAConstantShift) {
  DegradationParams p;
  const auto a = run_stream(p, SimTime::microseconds(64), 1000);
  for (size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k], SimTime::microseconds(64) * static_cast<int64_t>(k) + SimTime::milliseconds(2));
  }
}

TEST(Impairment, MeanDelayWithinOnePercent) {
  DegradationParams p;
  p.jitter_sigma = SimTime::microseconds(660);
  const SimTime gap = SimTime::microseconds(64);
  const auto a = run_stream(p, gap, 100000);
  double sum = 0.0;
  for (size_t k = 0; k < a.size(); ++k) sum += (a[k] - gap * static_cast<int64_t>(k)).to_seconds();
  EXPECT_NEAR(sum / a.size(), 2e-3, 0.01 * 2e-3);
}

TEST(Impairment, FloorTruncates) {
  Engine e;
  DegradationParams p;
  p.mean_latency = SimTime();
  p.jitter_sigma = SimTime::milliseconds(1);
  p.min_latency_floor = SimTime::microseconds(10);
  RngStream r(3, StreamId::kTest);
  for (int i = 0; i < 10000; ++i) ASSERT_GE(sample_delay(p, r), p.min_latency_floor);
}

TEST(Impairment, InvalidParamsRejected) {
  DegradationParams p;
  p.jitter_sigma = SimTime::nanoseconds(-1);
  EXPECT_THROW(validate(p), ConfigError);
}

struct OvertakeCase {
  int gap_us;
  int sigma_us;
};

void PrintTo(const OvertakeCase& c, std::ostream* os) { *os << c.gap_us << "us/" << c.sigma_us << "us"; }

class Overtake : public ::testing::TestWithParam<OvertakeCase> {};

TEST_P(Overtake, MatchesNormalDifferenceOracle) {
  const auto c = GetParam();
  DegradationParams p;
  p.jitter_sigma = SimTime::microseconds(c.sigma_us);
  const double measured = overtake_fraction(run_stream(p, SimTime::microseconds(c.gap_us), 100000));
  const double oracle = phi(-c.gap_us / (c.sigma_us * std::sqrt(2.0)));
  EXPECT_NEAR(measured, oracle, 0.02);
}

INSTANTIATE_TEST_SUITE_P(Pairs, Overtake,
                         ::testing::Values(OvertakeCase{64, 660}, OvertakeCase{96, 100}, OvertakeCase{400, 660}),
                         [](const auto& info) {
                           return "gap" + std::to_string(info.param.gap_us) + "us_sigma" +
                                  std::to_string(info.param.sigma_us) + "us";
                         });

TEST(Impairment, OvertakingGrowsWithSigma) {
  const SimTime gap = SimTime::microseconds(96);
  double last = -1.0;
  for (int sigma : {0, 50, 100, 330, 660}) {
    DegradationParams p;
    p.jitter_sigma = SimTime::microseconds(sigma);
    const double f = overtake_fraction(run_stream(p, gap, 20000));
    EXPECT_GE(f, last);
    last = f;
  }
}

TEST(Vlan, MuxStampsPerFlowTags) {
  const SwitchPortMap map = SwitchPortMap::defaults();
  Packet m, o, pr;
  o.flow = FlowId::kOverload;
  pr.flow = FlowId::kProbe;
  EXPECT_EQ(*mux(m, map).vlan_tag, *map.tag_for(FlowId::kMobileV1));
  EXPECT_EQ(*mux(o, map).vlan_tag, *map.tag_for(FlowId::kOverload));
  EXPECT_EQ(*mux(pr, map).vlan_tag, *map.tag_for(FlowId::kMobileV1));
  EXPECT_NE(*map.tag_for(FlowId::kMobileV1), *map.tag_for(FlowId::kOverload));
}

TEST(Vlan, DemuxRoutesByTagAndClearsIt) {
  const SwitchPortMap map = SwitchPortMap::defaults();
  Packet m;
  m.seq = 42;
  m.size_bytes = 1200;
  Packet t = mux(m, map);
  EXPECT_EQ(demux(t, map), FlowId::kMobileV1);
  EXPECT_FALSE(t.vlan_tag);
  EXPECT_EQ(t.seq, 42u);
  EXPECT_EQ(t.size_bytes, 1200u);

  Packet o;
  o.flow = FlowId::kOverload;
  Packet to = mux(o, map);
  EXPECT_EQ(demux(to, map), FlowId::kOverload);
}

TEST(Vlan, UnknownTagIsMisrouted) {
  const SwitchPortMap map = SwitchPortMap::defaults();
  Packet p;
  p.vlan_tag = 999;
  EXPECT_FALSE(demux(p, map));
  Packet untagged;
  EXPECT_FALSE(demux(untagged, map));
}

TEST(Vlan, DuplicateTagsRejected) {
  SwitchPortMap map;
  map.assign(FlowId::kMobileV1, 10);
  EXPECT_THROW(map.assign(FlowId::kOverload, 10), ConfigError);
}

TEST(Vlan, UnmappedFlowIsAFault) {
  SwitchPortMap map;
  map.assign(FlowId::kMobileV1, 10);
  Packet o;
  o.flow = FlowId::kOverload;
  EXPECT_THROW(mux(o, map), SimulationFault);
}
