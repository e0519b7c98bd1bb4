#include "v1sim/endpoints/reorder_buffer.h"

#include "v1sim/sim/errors.h"

namespace v1sim::endpoints {

ReorderBuffer::ReorderBuffer(ReorderParams params) : params_(params) {
  if (params_.playout_deadline < SimTime()) throw ConfigError("playout deadline must be >= 0");
  if (params_.capacity_packets == 0) throw ConfigError("reorder capacity must be >= 1");
}

Classification ReorderBuffer::receive(uint64_t seq, SimTime now) {
  if (seq < next_expected_) {
    if (lost_.erase(seq) > 0) {
      --gap_loss_;
      ++late_;
      return Classification::kLate;
    }
    ++duplicates_;
    return Classification::kDuplicate;
  }
  if (seq == next_expected_) {
    ++accepted_;
    ++next_expected_;
    release_in_order();
    return Classification::kAccepted;
  }
  if (!held_.emplace(seq, now).second) {
    ++duplicates_;
    return Classification::kDuplicate;
  }
  held_arrivals_.insert(now);
  while (held_.size() > params_.capacity_packets) {
    ++forced_;
    skip_gap();
  }
  return Classification::kHeld;
}

void ReorderBuffer::expire(SimTime now) {
  while (!held_arrivals_.empty() && *held_arrivals_.begin() + params_.playout_deadline <= now) {
    skip_gap();
  }
}

std::optional<SimTime> ReorderBuffer::next_deadline() const {
  if (held_arrivals_.empty()) return std::nullopt;
  return *held_arrivals_.begin() + params_.playout_deadline;
}

void ReorderBuffer::on_path_drop(uint64_t seq) {
  if (seq < next_expected_) {
    if (lost_.erase(seq) > 0) --gap_loss_;
    return;
  }
  dropped_ahead_.insert(seq);
}

void ReorderBuffer::skip_gap() {
  const uint64_t first_held = held_.begin()->first;
  for (uint64_t s = next_expected_; s < first_held; ++s) {
    if (dropped_ahead_.erase(s) > 0) continue;
    lost_.insert(s);
    ++gap_loss_;
  }
  next_expected_ = first_held;
  release_in_order();
}

void ReorderBuffer::release_in_order() {
  while (!held_.empty() && held_.begin()->first == next_expected_) {
    held_arrivals_.erase(held_arrivals_.find(held_.begin()->second));
    held_.erase(held_.begin());
    ++accepted_;
    ++next_expected_;
  }
  // Drop notices for seqs already passed are no longer needed.
  if (!dropped_ahead_.empty()) std::erase_if(dropped_ahead_, [this](uint64_t s) { return s < next_expected_; });
}

}  // namespace v1sim::endpoints
