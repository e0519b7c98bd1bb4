#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "v1sim/pon/tcont.h"
#include "v1sim/sim/time.h"

namespace v1sim::pon {

// Status report of one T-CONT, taken at a cycle boundary after that cycle's
// burst was scheduled.
struct OccupancyReport {
  uint32_t tcont_id = 0;
  uint64_t reported_bytes = 0;
  // Bytes the OLT received from this T-CONT in the burst preceding the report.
  uint64_t transmitted_bytes = 0;
  SimTime report_time;
};

struct Grant {
  uint32_t tcont_id = 0;
  uint64_t granted_bytes = 0;
};

struct GrantMap {
  SimTime cycle_start;
  std::vector<Grant> grants;  // ascending tcont_id
  bool assured_oversubscribed = false;

  uint64_t total() const;
  uint64_t granted(uint32_t tcont_id) const;
};

struct TContDemand {
  double smoothed_demand = 0.0;  // bytes per cycle
  uint64_t last_occupancy = 0;
};

struct DbaState {
  double ema_alpha = 1.0;
  SimTime cycle_period = SimTime::microseconds(125);
  std::map<uint32_t, TContDemand> tconts;

  double smoothed_demand(uint32_t tcont_id) const;
};

// alpha = cycle / tau, clamped to (0, 1].
double ema_alpha_for(SimTime cycle, SimTime tau);
// Assured bytes per cycle, rounded up so the guarantee is never undershot.
uint64_t assured_bytes_per_cycle(double assured_bps, SimTime cycle);
// Usable upstream bytes per cycle, rounded down.
uint64_t cycle_capacity_bytes(double capacity_bps, SimTime cycle);

// Equal-share water-filling of `budget` over `residual`. Bytes that cannot be
// split evenly go one each to the lowest indices still below their residual.
std::vector<uint64_t> water_fill(std::span<const uint64_t> residual, uint64_t budget);

struct AllocationInput {
  uint32_t tcont_id = 0;
  uint64_t demand = 0;   // smoothed, bytes per cycle
  uint64_t backlog = 0;  // reported occupancy
  uint64_t assured = 0;  // bytes per cycle
};

struct Allocation {
  std::vector<uint64_t> granted;  // same order as the inputs
  bool assured_oversubscribed = false;
};

// Three phases, inputs ordered by ascending tcont_id:
//   1. assured:     g = min(demand, assured), scaled down pro rata if the
//                   assured sum exceeds capacity;
//   2. best effort: remaining capacity water-filled over demand - g;
//   3. surplus:     what is still left water-filled over backlog - g.
// The result never exceeds capacity in total.
Allocation allocate_grants(std::span<const AllocationInput> inputs, uint64_t capacity);

// Status-reporting DBA step: folds the reports into the smoothed per-cycle
// arrival estimate, then allocates. A profile without a report contributes
// no arrivals and no backlog for this cycle.
GrantMap dba_allocate(std::span<const OccupancyReport> reports, DbaState& state,
                      uint64_t cycle_capacity, std::span<const TContProfile> profiles,
                      SimTime cycle_start);

}  // namespace v1sim::pon
