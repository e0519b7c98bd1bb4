#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "v1sim/sim/time.h"

namespace v1sim {

// Single-threaded discrete-event engine. Events fire in (time, insertion
// order) order; scheduling into the past is a SimulationFault.
class Engine {
 public:
  using Action = std::function<void()>;

  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  SimTime now() const { return now_; }

  void schedule(SimTime at, Action action);
  void schedule_in(SimTime delay, Action action) { schedule(now_ + delay, std::move(action)); }

  // Dispatches every event with fire time <= end. Returns the number of
  // events dispatched by this call.
  uint64_t run_until(SimTime end);

  size_t pending() const { return heap_.size(); }
  uint64_t dispatched() const { return dispatched_; }

 private:
  struct Entry {
    int64_t at;
    uint64_t seq;
    uint32_t slot;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  std::vector<Entry> heap_;
  std::vector<Action> actions_;
  std::vector<uint32_t> free_slots_;
  SimTime now_;
  uint64_t next_seq_ = 0;
  uint64_t dispatched_ = 0;
};

}  // namespace v1sim
