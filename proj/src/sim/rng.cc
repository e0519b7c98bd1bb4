#include "v1sim/sim/rng.h"

#include <cmath>
#include <numbers>

#include "v1sim/sim/errors.h"

namespace v1sim {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(uint64_t master_seed, uint64_t stream_id)
    : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(~stream_id))),
      master_seed_(master_seed),
      stream_id_(stream_id) {}

double RngStream::uniform() {
  // 53 random bits, shifted half an ulp off zero.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller.
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double RngStream::exponential(double mean) { return -mean * std::log(uniform()); }

double normal_sample(RngStream& stream, double mean, double sigma) {
  if (!(sigma >= 0.0)) throw ConfigError("normal_sample: sigma must be >= 0");
  const double z = stream.standard_normal();
  if (sigma == 0.0) return mean;
  return mean + sigma * z;
}

}  // namespace v1sim
