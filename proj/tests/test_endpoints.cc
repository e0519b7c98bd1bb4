#include <gtest/gtest.h>

#include <vector>

#include "v1sim/endpoints/du_endpoint.h"
#include "v1sim/endpoints/host_stack.h"
#include "v1sim/endpoints/receiver_budget.h"
#include "v1sim/endpoints/reorder_buffer.h"
#include "v1sim/endpoints/throughput.h"
#include "v1sim/metrics/ledger.h"
#include "v1sim/sim/errors.h"

using namespace v1sim;
using namespace v1sim::endpoints;

namespace {

SimTime us(int64_t v) { return SimTime::microseconds(v); }

}  // namespace

TEST(Reorder, InOrderArrivalsAreAccepted) {
  ReorderBuffer b;
  for (uint64_t s = 0; s < 3; ++s) EXPECT_EQ(b.receive(s, us(s * 10)), Classification::kAccepted);
  EXPECT_EQ(b.accepted(), 3u);
  EXPECT_EQ(b.late() + b.gap_loss(), 0u);
}

TEST(Reorder, SmallReorderIsAbsorbed) {
  ReorderBuffer b;
  EXPECT_EQ(b.receive(0, us(0)), Classification::kAccepted);
  EXPECT_EQ(b.receive(2, us(10)), Classification::kHeld);
  EXPECT_EQ(b.receive(1, us(20)), Classification::kAccepted);
  EXPECT_EQ(b.accepted(), 3u);
  EXPECT_EQ(b.held(), 0u);
  EXPECT_EQ(b.next_expected(), 3u);
}

TEST(Reorder, ArrivalAfterDeadlineIsLate) {
  ReorderBuffer b;  // 1 ms deadline
  b.receive(0, us(0));
  b.receive(2, us(100));  // gap at seq 1 opens
  b.receive(3, us(200));
  ASSERT_EQ(b.next_deadline(), us(1100));
  b.expire(us(1100));
  EXPECT_EQ(b.gap_loss(), 1u);
  EXPECT_EQ(b.accepted(), 3u);
  EXPECT_EQ(b.receive(1, us(1600)), Classification::kLate);
  EXPECT_EQ(b.gap_loss(), 0u);
  EXPECT_EQ(b.late(), 1u);
  metrics::FlowLedger l;
  l.sent = 4;
  l.accepted = b.accepted();
  l.late = b.late();
  l.gap_loss = b.gap_loss();
  EXPECT_DOUBLE_EQ(metrics::per(l), 0.25);
}

TEST(Reorder, GapAgeComesFromTheEarliestHeldPacket) {
  ReorderBuffer b;
  b.receive(0, us(0));
  b.receive(3, us(100));
  b.receive(2, us(900));
  b.expire(us(1099));
  EXPECT_EQ(b.gap_loss(), 0u);
  b.expire(us(1100));
  EXPECT_EQ(b.gap_loss(), 1u);
  EXPECT_EQ(b.next_expected(), 4u);
}

TEST(Reorder, DuplicateIsNeitherAcceptedNorLate) {
  ReorderBuffer b;
  b.receive(0, us(0));
  EXPECT_EQ(b.receive(0, us(1)), Classification::kDuplicate);
  b.receive(2, us(2));
  EXPECT_EQ(b.receive(2, us(3)), Classification::kDuplicate);
  EXPECT_EQ(b.duplicates(), 2u);
}

TEST(Reorder, KnownPathDropIsNotAGapLoss) {
  ReorderBuffer b;
  b.receive(0, us(0));
  b.on_path_drop(1);
  b.receive(2, us(100));
  b.expire(us(2000));
  EXPECT_EQ(b.gap_loss(), 0u);
  EXPECT_EQ(b.accepted(), 2u);
}

TEST(Reorder, DropReportedAfterGapLossIsWithdrawn) {
  ReorderBuffer b;
  b.receive(0, us(0));
  b.receive(2, us(100));
  b.expire(us(2000));
  EXPECT_EQ(b.gap_loss(), 1u);
  b.on_path_drop(1);
  EXPECT_EQ(b.gap_loss(), 0u);
}

TEST(Reorder, CapacityOverflowForcesFlush) {
  ReorderBuffer b({SimTime::milliseconds(1), 3});
  b.receive(0, us(0));
  for (uint64_t s = 2; s <= 5; ++s) b.receive(s, us(s));
  EXPECT_EQ(b.forced(), 1u);
  EXPECT_EQ(b.gap_loss(), 1u);
  EXPECT_EQ(b.accepted(), 5u);
  EXPECT_EQ(b.held(), 0u);
}

TEST(DuEndpoint, TimerExpiresAStaleGapWithoutFurtherArrivals) {
  Engine e;
  DuEndpoint du(e, {});
  e.schedule(us(0), [&] { Packet p; p.seq = 0; du.receive(p); });
  e.schedule(us(100), [&] { Packet p; p.seq = 2; du.receive(p); });
  e.run_until(us(1099));
  EXPECT_EQ(du.buffer().gap_loss(), 0u);
  e.run_until(us(1100));
  EXPECT_EQ(du.buffer().gap_loss(), 1u);
  EXPECT_EQ(du.buffer().accepted(), 2u);
}

TEST(HostStack, PreservesOrderAndAddsAtLeastBaseLatency) {
  Engine e;
  std::vector<std::pair<uint64_t, SimTime>> out;
  HostStack h(e, {}, RngStream(1, StreamId::kHostDu), [&](Packet p) { out.push_back({p.seq, e.now()}); });
  for (int i = 0; i < 2000; ++i) {
    e.schedule(SimTime::nanoseconds(i * 500), [&h, i] {
      Packet p;
      p.seq = static_cast<uint64_t>(i);
      h.receive(p);
    });
  }
  e.run_until(SimTime::seconds(1));
  ASSERT_EQ(out.size(), 2000u);
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].first, i);
    EXPECT_GE(out[i].second, SimTime::nanoseconds(static_cast<int64_t>(i) * 500) + us(200));
  }
}

TEST(ReceiverBudget, FullSystemDrops) {
  Engine e;
  int delivered = 0, dropped = 0;
  ReceiverBudget b(e, {160e6, 2}, RngStream(1, StreamId::kReceiverBudget), [&](Packet) { ++delivered; },
                   [&](const Packet&) { ++dropped; });
  e.schedule(SimTime(), [&] {
    for (int i = 0; i < 5; ++i) {
      Packet p;
      p.size_bytes = 1200;
      b.receive(p);
    }
  });
  e.run_until(SimTime::seconds(1));
  EXPECT_EQ(delivered, 2);
  EXPECT_EQ(dropped, 3);
}

TEST(ReceiverBudget, SustainedOverloadDrops) {
  Engine e;
  ReceiverBudget b(e, {160e6, 12}, RngStream(1, StreamId::kReceiverBudget), [](Packet) {}, {});
  std::function<void()> src = [&] {
    Packet p;
    p.size_bytes = 1200;
    b.receive(p);
    e.schedule_in(SimTime::nanoseconds(40000), src);  // 240 Mb/s
  };
  e.schedule(SimTime(), src);
  e.run_until(SimTime::milliseconds(200));
  EXPECT_GT(b.drops(), 1000u);
}

TEST(ReceiverBudget, NoDropsWellBelowBudget) {
  Engine e;
  ReceiverBudget b(e, {160e6, 12}, RngStream(1, StreamId::kReceiverBudget), [](Packet) {}, {});
  std::function<void()> src = [&] {
    Packet p;
    p.size_bytes = 1200;
    b.receive(p);
    e.schedule_in(SimTime::nanoseconds(240000), src);  // 40 Mb/s
  };
  e.schedule(SimTime(), src);
  e.run_until(SimTime::seconds(5));
  EXPECT_EQ(b.drops(), 0u);
}

namespace {

std::vector<Arrival> cbr_arrivals(SimTime start, SimTime gap, SimTime end, uint32_t bytes) {
  std::vector<Arrival> a;
  for (SimTime t = start; t <= end; t += gap) a.push_back({t, bytes});
  return a;
}

}  // namespace

TEST(Throughput, ConstantRateAfterOneWindow) {
  const auto a = cbr_arrivals(SimTime(), us(96), SimTime::milliseconds(200), 1200);
  const auto s = windowed_throughput(a, SimTime(), SimTime::milliseconds(200));
  for (const auto& x : s) {
    if (x.t >= SimTime::milliseconds(10)) ASSERT_NEAR(x.bps, 100e6, 1e6) << x.t.to_ms();
  }
}

TEST(Throughput, NoArrivalsIsZero) {
  const auto s = windowed_throughput({}, SimTime(), SimTime::milliseconds(50));
  ASSERT_EQ(s.size(), 50u);
  for (const auto& x : s) EXPECT_EQ(x.bps, 0.0);
}

TEST(Throughput, StepRampsLinearlyOverOneWindow) {
  // 100 Mb/s; first packet completes one interval after the origin.
  const auto a = cbr_arrivals(us(100), us(100), SimTime::milliseconds(100), 1250);
  const auto s = windowed_throughput(a, SimTime(), SimTime::milliseconds(100));
  for (int k = 1; k <= 10; ++k) EXPECT_NEAR(s[k - 1].bps, 100e6 * k / 10.0, 1e-6) << k;
}

TEST(Throughput, WindowMustBePositive) {
  EXPECT_THROW(windowed_throughput({}, SimTime(), SimTime::milliseconds(5), SimTime()), ConfigError);
}

TEST(T95, PureStepConvergesInOneWindow) {
  const auto a = cbr_arrivals(SimTime::milliseconds(30) + us(100), us(100), SimTime::milliseconds(300), 1250);
  const auto s = windowed_throughput(a, SimTime::milliseconds(30), SimTime::milliseconds(300));
  EXPECT_EQ(t95_convergence(s, 100e6, SimTime::milliseconds(30)), SimTime::milliseconds(10));
}

TEST(T95, OscillatingSeriesNeverConverges) {
  std::vector<ThroughputSample> s;
  for (int i = 1; i <= 1000; ++i) s.push_back({SimTime::milliseconds(i), (i / 20) % 2 ? 100e6 : 90e6});
  EXPECT_FALSE(t95_convergence(s, 100e6, SimTime()));
}

TEST(T95, HoldMustCompleteInsideTheSeries) {
  std::vector<ThroughputSample> s;
  for (int i = 1; i <= 40; ++i) s.push_back({SimTime::milliseconds(i), 100e6});
  EXPECT_FALSE(t95_convergence(s, 100e6, SimTime()));
}

TEST(T95, BadInputsRejected) {
  EXPECT_THROW(t95_convergence({}, 100e6, SimTime()), ConfigError);
  std::vector<ThroughputSample> s{{SimTime::milliseconds(1), 1.0}};
  EXPECT_THROW(t95_convergence(s, 0.0, SimTime()), ConfigError);
}
