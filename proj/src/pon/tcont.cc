#include "v1sim/pon/tcont.h"

#include "v1sim/sim/errors.h"

namespace v1sim::pon {

TContQueue::TContQueue(TContProfile profile, bool fragmentation)
    : profile_(profile), fragmentation_(fragmentation) {
  if (profile_.assured_bps < 0.0) throw ConfigError("assured rate must be >= 0");
}

uint64_t TContQueue::total_drops() const {
  uint64_t n = 0;
  for (auto d : drops_) n += d;
  return n;
}

bool TContQueue::upstream_enqueue(Packet p) {
  if (p.size_bytes == 0) throw SimulationFault("zero-size packet at T-CONT");
  if (occupancy_ + p.size_bytes > profile_.queue_capacity_bytes) {
    ++drops_[flow_index(p.flow)];
    return false;
  }
  occupancy_ += p.size_bytes;
  fifo_.push_back(std::move(p));
  return true;
}

ServeResult TContQueue::serve(uint64_t grant_bytes) {
  ServeResult out;
  uint64_t budget = grant_bytes;
  while (budget > 0 && !fifo_.empty()) {
    const uint64_t remaining = fifo_.front().size_bytes - head_sent_;
    if (remaining <= budget) {
      budget -= remaining;
      out.bytes_sent += remaining;
      head_sent_ = 0;
      out.departures.push_back(Departure{std::move(fifo_.front()), out.bytes_sent});
      fifo_.pop_front();
    } else {
      if (fragmentation_) {
        head_sent_ += budget;
        out.bytes_sent += budget;
      }
      budget = 0;
    }
  }
  occupancy_ -= out.bytes_sent;
  return out;
}

}  // namespace v1sim::pon
