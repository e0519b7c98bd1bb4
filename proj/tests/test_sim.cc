#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "v1sim/sim/engine.h"
#include "v1sim/sim/errors.h"
#include "v1sim/sim/rng.h"

using namespace v1sim;

TEST(Engine, EventAtNowFromNowFiresFirst) {
  Engine e;
  std::vector<int> order;
  e.schedule(SimTime::microseconds(1), [&] { order.push_back(2); });
  e.schedule(SimTime(), [&] { order.push_back(1); });
  e.run_until(SimTime::seconds(1));
  EXPECT_EQ(order, (std::vector<int>{1, 2}));
}

TEST(Engine, EqualTimesDispatchInInsertionOrder) {
  Engine e;
  std::vector<char> order;
  e.schedule(SimTime::microseconds(5), [&] { order.push_back('A'); });
  e.schedule(SimTime::microseconds(5), [&] { order.push_back('B'); });
  e.run_until(SimTime::microseconds(5));
  EXPECT_EQ(order, (std::vector<char>{'A', 'B'}));
}

TEST(Engine, HeapOrder) {
  Engine e;
  std::vector<int64_t> at;
  for (int us : {3, 1, 2}) e.schedule(SimTime::microseconds(us), [&] { at.push_back(e.now().ns()); });
  e.run_until(SimTime::seconds(1));
  EXPECT_EQ(at, (std::vector<int64_t>{1000, 2000, 3000}));
}

TEST(Engine, SchedulingIntoThePastIsAFault) {
  Engine e;
  e.schedule(SimTime::microseconds(10), [] {});
  e.run_until(SimTime::microseconds(10));
  EXPECT_THROW(e.schedule(SimTime::microseconds(5), [] {}), SimulationFault);
}

TEST(Engine, EmptyQueueRunsNothing) {
  Engine e;
  EXPECT_EQ(e.run_until(SimTime::seconds(1)), 0u);
}

TEST(Engine, SelfReschedulingEveryCycle) {
  Engine e;
  const SimTime cycle = SimTime::microseconds(125);
  std::function<void()> tick = [&] { e.schedule_in(cycle, tick); };
  e.schedule(cycle, tick);
  EXPECT_EQ(e.run_until(SimTime::milliseconds(1)), 8u);
  EXPECT_EQ(e.now(), SimTime::milliseconds(1));
}

TEST(Engine, InclusiveEndBoundary) {
  Engine e;
  int fired = 0;
  e.schedule(SimTime(), [&] { ++fired; });
  EXPECT_EQ(e.run_until(SimTime()), 1u);
  EXPECT_EQ(fired, 1);
}

TEST(Engine, ClockStopsAtLastEventWhenQueueDrains) {
  Engine e;
  e.schedule(SimTime::microseconds(7), [] {});
  e.run_until(SimTime::seconds(1));
  EXPECT_EQ(e.now(), SimTime::microseconds(7));
}

TEST(Engine, ClockNeverGoesBackwards) {
  Engine e;
  RngStream r(3, StreamId::kTest);
  int64_t last = -1;
  bool monotone = true;
  std::function<void()> spawn = [&] {
    if (e.now().ns() < last) monotone = false;
    last = e.now().ns();
    if (e.dispatched() < 5000) {
      e.schedule_in(SimTime::nanoseconds(static_cast<int64_t>(r.next_u64() % 1000)), spawn);
      e.schedule_in(SimTime::nanoseconds(static_cast<int64_t>(r.next_u64() % 1000)), [] {});
    }
  };
  e.schedule(SimTime(), spawn);
  e.run_until(SimTime::seconds(1));
  EXPECT_TRUE(monotone);
}

TEST(Rng, NormalWithZeroSigmaIsExact) {
  RngStream r(1, StreamId::kTest);
  EXPECT_EQ(normal_sample(r, 2e-3, 0.0), 2e-3);
}

TEST(Rng, NegativeSigmaIsConfigError) {
  RngStream r(1, StreamId::kTest);
  EXPECT_THROW(normal_sample(r, 2e-3, -1e-6), ConfigError);
}

TEST(Rng, NormalMomentsOver1e5Samples) {
  RngStream r(42, StreamId::kTest);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = normal_sample(r, 2e-3, 0.66e-3);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt((sq - n * mean * mean) / (n - 1));
  EXPECT_NEAR(mean, 2e-3, 0.01e-3);
  EXPECT_NEAR(sd, 0.66e-3, 0.01e-3);
}

TEST(Rng, SameSeedSameStreamIsIdentical) {
  RngStream a(7, StreamId::kDegradeDownlink), b(7, StreamId::kDegradeDownlink);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(normal_sample(a, 0, 1), normal_sample(b, 0, 1));
}

TEST(Rng, StreamsAreIndependentOfEachOthersConsumption) {
  RngStream a1(7, StreamId::kDegradeDownlink), b1(7, StreamId::kHostDu);
  RngStream a2(7, StreamId::kDegradeDownlink);
  for (int i = 0; i < 1000; ++i) b1.next_u64();
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a1.next_u64(), a2.next_u64());
}

TEST(Rng, DifferentStreamsDiffer) {
  RngStream a(7, StreamId::kHostDu), b(7, StreamId::kHostCu);
  EXPECT_NE(a.next_u64(), b.next_u64());
}

TEST(Rng, UniformIsOpenInterval) {
  RngStream r(9, StreamId::kTest);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, ExponentialMean) {
  RngStream r(11, StreamId::kTest);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += r.exponential(20e-6);
  EXPECT_NEAR(sum / n, 20e-6, 0.2e-6);
}
