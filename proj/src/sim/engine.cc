#include "v1sim/sim/engine.h"

#include <algorithm>
#include <string>

#include "v1sim/sim/errors.h"

namespace v1sim {

void Engine::schedule(SimTime at, Action action) {
  if (at < now_) {
    throw SimulationFault("event scheduled at " + std::to_string(at.ns()) +
                          " ns before current clock " + std::to_string(now_.ns()) + " ns");
  }
  uint32_t slot;
  if (free_slots_.empty()) {
    slot = static_cast<uint32_t>(actions_.size());
    actions_.push_back(std::move(action));
  } else {
    slot = free_slots_.back();
    free_slots_.pop_back();
    actions_[slot] = std::move(action);
  }
  heap_.push_back(Entry{at.ns(), next_seq_++, slot});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

uint64_t Engine::run_until(SimTime end) {
  uint64_t count = 0;
  while (!heap_.empty() && heap_.front().at <= end.ns()) {
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Entry e = heap_.back();
    heap_.pop_back();
    now_ = SimTime::nanoseconds(e.at);
    Action action = std::move(actions_[e.slot]);
    actions_[e.slot] = nullptr;
    free_slots_.push_back(e.slot);
    action();
    ++count;
    ++dispatched_;
  }
  if (!heap_.empty() && end > now_) now_ = end;
  return count;
}

}  // namespace v1sim
