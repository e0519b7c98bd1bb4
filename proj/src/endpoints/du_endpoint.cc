#include "v1sim/endpoints/du_endpoint.h"

namespace v1sim::endpoints {

DuEndpoint::DuEndpoint(Engine& engine, ReorderParams params, Observer observer)
    : engine_(engine), buffer_(params), observer_(std::move(observer)) {}

void DuEndpoint::receive(Packet p) {
  buffer_.expire(engine_.now());
  const Classification c = buffer_.receive(p.seq, engine_.now());
  if (observer_) observer_(p, c);
  arm();
}

void DuEndpoint::arm() {
  auto deadline = buffer_.next_deadline();
  // The deadline never moves earlier: arrivals only add later timestamps.
  if (!deadline || (armed_ && armed_at_ <= *deadline)) return;
  armed_ = true;
  armed_at_ = *deadline;
  engine_.schedule(*deadline, [this] {
    armed_ = false;
    buffer_.expire(engine_.now());
    arm();
  });
}

}  // namespace v1sim::endpoints
