#include "v1sim/traffic/sink.h"

namespace v1sim {

void FlowSink::sink_record(Packet p) {
  p.arrived_sink = engine_.now();
  ++received_[flow_index(p.flow)];
  bytes_[flow_index(p.flow)] += p.size_bytes;
  if (observer_) observer_(p);
}

}  // namespace v1sim
