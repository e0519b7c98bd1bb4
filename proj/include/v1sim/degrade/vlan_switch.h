#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "v1sim/traffic/packet.h"

namespace v1sim::degrade {

// Flow <-> VLAN tag assignment of the aggregation switches. Downlink carries
// every tag on one trunk; uplink ingress has one port per tag.
class SwitchPortMap {
 public:
  SwitchPortMap() = default;
  // Throws ConfigError if the tag is already used by another flow.
  void assign(FlowId flow, uint16_t tag);

  std::optional<uint16_t> tag_for(FlowId flow) const { return tags_[flow_index(flow)]; }
  std::optional<FlowId> flow_for(uint16_t tag) const;

  static SwitchPortMap defaults();

 private:
  std::array<std::optional<uint16_t>, kFlowCount> tags_{};
};

// Stamps the flow's tag. Throws SimulationFault for a flow missing from the map.
Packet mux(Packet p, const SwitchPortMap& map);

// Clears the tag and returns the destination flow port, or nullopt for a
// missing or unknown tag (the caller counts it as misrouted).
std::optional<FlowId> demux(Packet& p, const SwitchPortMap& map);

}  // namespace v1sim::degrade
