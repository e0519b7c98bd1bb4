#include "v1sim/endpoints/receiver_budget.h"

#include "v1sim/sim/errors.h"

namespace v1sim::endpoints {

ReceiverBudget::ReceiverBudget(Engine& engine, ReceiverBudgetParams params, RngStream stream,
                               PacketHandler deliver, DropHandler drop)
    : engine_(engine),
      params_(params),
      stream_(stream),
      deliver_(std::move(deliver)),
      drop_(std::move(drop)) {
  if (!(params_.max_process_rate_bps > 0)) throw ConfigError("receiver budget rate must be > 0");
  if (params_.depth_packets == 0) throw ConfigError("receiver budget depth must be >= 1");
}

void ReceiverBudget::receive(Packet p) {
  if (queue_.size() >= params_.depth_packets) {
    ++drops_;
    if (drop_) drop_(p);
    return;
  }
  queue_.push_back(std::move(p));
  if (queue_.size() == 1) start_service();
}

void ReceiverBudget::start_service() {
  const double mean = queue_.front().size_bytes * 8.0 / params_.max_process_rate_bps;
  engine_.schedule_in(SimTime::from_seconds(stream_.exponential(mean)), [this] {
    Packet p = std::move(queue_.front());
    queue_.pop_front();
    ++served_;
    if (!queue_.empty()) start_service();
    deliver_(std::move(p));
  });
}

}  // namespace v1sim::endpoints
