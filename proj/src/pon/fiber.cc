#include "v1sim/pon/fiber.h"

#include "v1sim/sim/errors.h"

namespace v1sim::pon {

SimTime propagation_delay(double length_km, double group_index) {
  if (length_km < 0.0) throw ConfigError("fibre length must be >= 0");
  return SimTime::from_seconds(length_km * 1e3 * group_index / kSpeedOfLight);
}

}  // namespace v1sim::pon
