#pragma once

#include "v1sim/sim/time.h"

namespace v1sim::pon {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kDefaultGroupIndex = 1.468;

// One-way propagation over standard single-mode fibre.
SimTime propagation_delay(double length_km, double group_index = kDefaultGroupIndex);

}  // namespace v1sim::pon
