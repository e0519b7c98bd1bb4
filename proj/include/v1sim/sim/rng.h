#pragma once

#include <cstdint>
#include <random>

namespace v1sim {

// Stream labels. Each stochastic entity owns one, so changing one entity's
// consumption never perturbs another's sequence.
enum class StreamId : uint64_t {
  kDegradeDownlink = 1,
  kDegradeUplink = 2,
  kHostDu = 3,
  kHostCu = 4,
  kReceiverBudget = 5,
  kProbePhase = 6,
  kTest = 1000,
};

// Deterministic random stream keyed by (master_seed, stream_id). The
// sequence is fully specified (mt19937_64 plus our own transforms), so it is
// identical across standard libraries.
class RngStream {
 public:
  RngStream(uint64_t master_seed, uint64_t stream_id);
  RngStream(uint64_t master_seed, StreamId id)
      : RngStream(master_seed, static_cast<uint64_t>(id)) {}

  uint64_t next_u64() { return engine_(); }
  // Uniform on the open interval (0, 1).
  double uniform();
  double standard_normal();
  double exponential(double mean);

  uint64_t master_seed() const { return master_seed_; }
  uint64_t stream_id() const { return stream_id_; }

 private:
  std::mt19937_64 engine_;
  uint64_t master_seed_;
  uint64_t stream_id_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

uint64_t splitmix64(uint64_t x);

// Draw from Normal(mean, sigma^2). sigma == 0 returns mean exactly; sigma < 0
// is a ConfigError.
double normal_sample(RngStream& stream, double mean, double sigma);

}  // namespace v1sim
