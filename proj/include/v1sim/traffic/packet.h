#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "v1sim/sim/time.h"

namespace v1sim {

enum class FlowId : uint8_t { kMobileV1 = 0, kOverload = 1, kProbe = 2 };
inline constexpr size_t kFlowCount = 3;
inline constexpr std::array<FlowId, kFlowCount> kAllFlows = {FlowId::kMobileV1, FlowId::kOverload,
                                                             FlowId::kProbe};

constexpr size_t flow_index(FlowId f) { return static_cast<size_t>(f); }
std::string_view flow_name(FlowId f);

using PerFlowCount = std::array<uint64_t, kFlowCount>;

struct Packet {
  FlowId flow = FlowId::kMobileV1;
  uint64_t seq = 0;
  uint32_t size_bytes = 0;
  SimTime created_at;
  SimTime departed_source;
  std::optional<SimTime> arrived_sink;
  std::optional<uint16_t> vlan_tag;
  // Probe reply leg (EPC -> UE).
  bool echo = false;
};

using PacketHandler = std::function<void(Packet)>;
using DropHandler = std::function<void(const Packet&)>;

}  // namespace v1sim
