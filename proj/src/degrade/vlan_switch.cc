#include "v1sim/degrade/vlan_switch.h"

#include <string>

#include "v1sim/sim/errors.h"

namespace v1sim::degrade {

void SwitchPortMap::assign(FlowId flow, uint16_t tag) {
  for (FlowId other : kAllFlows) {
    if (other != flow && tags_[flow_index(other)] == tag) {
      throw ConfigError("VLAN tag " + std::to_string(tag) + " already assigned");
    }
  }
  tags_[flow_index(flow)] = tag;
}

std::optional<FlowId> SwitchPortMap::flow_for(uint16_t tag) const {
  for (FlowId f : kAllFlows) {
    if (tags_[flow_index(f)] == tag) return f;
  }
  return std::nullopt;
}

SwitchPortMap SwitchPortMap::defaults() {
  SwitchPortMap map;
  map.assign(FlowId::kMobileV1, 100);
  map.assign(FlowId::kOverload, 200);
  // Probes ride the mobile V1 VLAN.
  return map;
}

Packet mux(Packet p, const SwitchPortMap& map) {
  FlowId port = p.flow == FlowId::kProbe && !map.tag_for(FlowId::kProbe) ? FlowId::kMobileV1 : p.flow;
  auto tag = map.tag_for(port);
  if (!tag) throw SimulationFault("flow " + std::string(flow_name(p.flow)) + " has no VLAN tag");
  p.vlan_tag = *tag;
  return p;
}

std::optional<FlowId> demux(Packet& p, const SwitchPortMap& map) {
  if (!p.vlan_tag) return std::nullopt;
  auto port = map.flow_for(*p.vlan_tag);
  if (!port) return std::nullopt;
  p.vlan_tag.reset();
  return port;
}

}  // namespace v1sim::degrade
