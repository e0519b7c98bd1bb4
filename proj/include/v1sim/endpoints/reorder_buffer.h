#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "v1sim/sim/time.h"

namespace v1sim::endpoints {

enum class Classification { kAccepted, kHeld, kLate, kDuplicate };

struct ReorderParams {
  SimTime playout_deadline = SimTime::milliseconds(1);
  uint32_t capacity_packets = 256;
};

// DU reorder/playout buffer over sequence numbers. Pure state machine; the
// owner calls expire() at next_deadline().
//
// A gap opens when the first packet beyond it arrives. Once the gap is older
// than the deadline its missing seqs are declared gap_loss and the held
// successors are released. A gap_loss seq that later arrives becomes late; one
// later reported dropped on the path is withdrawn from gap_loss.
class ReorderBuffer {
 public:
  explicit ReorderBuffer(ReorderParams params = {});

  // Callers should expire(now) first so a stale gap does not absorb `seq`.
  Classification receive(uint64_t seq, SimTime now);
  void expire(SimTime now);
  std::optional<SimTime> next_deadline() const;
  void on_path_drop(uint64_t seq);

  uint64_t next_expected() const { return next_expected_; }
  uint64_t accepted() const { return accepted_; }
  uint64_t late() const { return late_; }
  uint64_t gap_loss() const { return gap_loss_; }
  uint64_t duplicates() const { return duplicates_; }
  uint64_t forced() const { return forced_; }
  uint64_t held() const { return held_.size(); }
  const ReorderParams& params() const { return params_; }

 private:
  void release_in_order();
  void skip_gap();

  ReorderParams params_;
  uint64_t next_expected_ = 0;
  std::map<uint64_t, SimTime> held_;
  std::multiset<SimTime> held_arrivals_;
  std::unordered_set<uint64_t> lost_;
  std::unordered_set<uint64_t> dropped_ahead_;
  uint64_t accepted_ = 0;
  uint64_t late_ = 0;
  uint64_t gap_loss_ = 0;
  uint64_t duplicates_ = 0;
  uint64_t forced_ = 0;
};

}  // namespace v1sim::endpoints
