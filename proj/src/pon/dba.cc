#include "v1sim/pon/dba.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "v1sim/sim/errors.h"

namespace v1sim::pon {

uint64_t GrantMap::total() const {
  uint64_t sum = 0;
  for (const auto& g : grants) sum += g.granted_bytes;
  return sum;
}

uint64_t GrantMap::granted(uint32_t tcont_id) const {
  for (const auto& g : grants) {
    if (g.tcont_id == tcont_id) return g.granted_bytes;
  }
  return 0;
}

double DbaState::smoothed_demand(uint32_t tcont_id) const {
  auto it = tconts.find(tcont_id);
  return it == tconts.end() ? 0.0 : it->second.smoothed_demand;
}

double ema_alpha_for(SimTime cycle, SimTime tau) {
  if (cycle <= SimTime()) throw ConfigError("DBA cycle must be > 0");
  if (tau <= SimTime()) return 1.0;
  return std::min(1.0, static_cast<double>(cycle.ns()) / static_cast<double>(tau.ns()));
}

uint64_t assured_bytes_per_cycle(double assured_bps, SimTime cycle) {
  const auto bps = static_cast<unsigned __int128>(std::llround(assured_bps));
  const unsigned __int128 num = bps * static_cast<unsigned __int128>(cycle.ns());
  const unsigned __int128 den = 8'000'000'000ULL;
  return static_cast<uint64_t>((num + den - 1) / den);
}

uint64_t cycle_capacity_bytes(double capacity_bps, SimTime cycle) {
  const auto bps = static_cast<unsigned __int128>(std::llround(capacity_bps));
  const unsigned __int128 num = bps * static_cast<unsigned __int128>(cycle.ns());
  return static_cast<uint64_t>(num / 8'000'000'000ULL);
}

std::vector<uint64_t> water_fill(std::span<const uint64_t> residual, uint64_t budget) {
  std::vector<uint64_t> out(residual.size(), 0);
  if (residual.empty() || budget == 0) return out;

  auto filled_at = [&](uint64_t level) {
    uint64_t sum = 0;
    for (uint64_t r : residual) sum += std::min(r, level);
    return sum;
  };
  const uint64_t top = *std::max_element(residual.begin(), residual.end());
  if (filled_at(top) <= budget) {
    std::copy(residual.begin(), residual.end(), out.begin());
    return out;
  }
  // Largest level whose fill fits the budget.
  uint64_t lo = 0, hi = top;
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo + 1) / 2;
    if (filled_at(mid) <= budget) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  uint64_t left = budget - filled_at(lo);
  for (size_t i = 0; i < residual.size(); ++i) {
    out[i] = std::min(residual[i], lo);
    if (left > 0 && residual[i] > lo) {
      ++out[i];
      --left;
    }
  }
  return out;
}

Allocation allocate_grants(std::span<const AllocationInput> inputs, uint64_t capacity) {
  Allocation alloc;
  const size_t n = inputs.size();
  alloc.granted.assign(n, 0);

  uint64_t assured_sum = 0;
  for (size_t i = 0; i < n; ++i) {
    alloc.granted[i] = std::min(inputs[i].demand, inputs[i].assured);
    assured_sum += alloc.granted[i];
  }
  if (assured_sum > capacity) {
    alloc.assured_oversubscribed = true;
    uint64_t scaled = 0;
    for (size_t i = 0; i < n; ++i) {
      const auto g = static_cast<unsigned __int128>(alloc.granted[i]) * capacity / assured_sum;
      alloc.granted[i] = static_cast<uint64_t>(g);
      scaled += alloc.granted[i];
    }
    assured_sum = scaled;
  }

  uint64_t remaining = capacity - assured_sum;
  std::vector<uint64_t> residual(n);
  for (size_t i = 0; i < n; ++i) residual[i] = inputs[i].demand - alloc.granted[i];
  auto best_effort = water_fill(residual, remaining);
  for (size_t i = 0; i < n; ++i) {
    alloc.granted[i] += best_effort[i];
    remaining -= best_effort[i];
  }

  for (size_t i = 0; i < n; ++i) {
    residual[i] = inputs[i].backlog > alloc.granted[i] ? inputs[i].backlog - alloc.granted[i] : 0;
  }
  auto surplus = water_fill(residual, remaining);
  for (size_t i = 0; i < n; ++i) alloc.granted[i] += surplus[i];
  return alloc;
}

GrantMap dba_allocate(std::span<const OccupancyReport> reports, DbaState& state,
                      uint64_t cycle_capacity, std::span<const TContProfile> profiles,
                      SimTime cycle_start) {
  std::vector<const TContProfile*> ordered;
  ordered.reserve(profiles.size());
  for (const auto& p : profiles) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const TContProfile* a, const TContProfile* b) { return a->tcont_id < b->tcont_id; });

  std::vector<AllocationInput> inputs;
  inputs.reserve(ordered.size());
  for (const TContProfile* profile : ordered) {
    const OccupancyReport* report = nullptr;
    for (const auto& r : reports) {
      if (r.tcont_id == profile->tcont_id) report = &r;
    }
    TContDemand& d = state.tconts[profile->tcont_id];
    double arrivals = 0.0;
    uint64_t backlog = 0;
    if (report != nullptr) {
      const auto delta = static_cast<int64_t>(report->reported_bytes) -
                         static_cast<int64_t>(d.last_occupancy) +
                         static_cast<int64_t>(report->transmitted_bytes);
      arrivals = static_cast<double>(std::max<int64_t>(0, delta));
      backlog = report->reported_bytes;
      d.last_occupancy = report->reported_bytes;
    }
    d.smoothed_demand = state.ema_alpha * arrivals + (1.0 - state.ema_alpha) * d.smoothed_demand;
    inputs.push_back(AllocationInput{
        profile->tcont_id, static_cast<uint64_t>(std::llround(d.smoothed_demand)), backlog,
        assured_bytes_per_cycle(profile->assured_bps, state.cycle_period)});
  }

  Allocation alloc = allocate_grants(inputs, cycle_capacity);
  GrantMap map;
  map.cycle_start = cycle_start;
  map.assured_oversubscribed = alloc.assured_oversubscribed;
  for (size_t i = 0; i < inputs.size(); ++i) {
    map.grants.push_back(Grant{inputs[i].tcont_id, alloc.granted[i]});
  }
  return map;
}

}  // namespace v1sim::pon
