#include "v1sim/traffic/sources.h"

#include <cmath>

#include "v1sim/sim/errors.h"

namespace v1sim {

std::string_view flow_name(FlowId f) {
  switch (f) {
    case FlowId::kMobileV1:
      return "mobile";
    case FlowId::kOverload:
      return "overload";
    case FlowId::kProbe:
      return "probe";
  }
  return "unknown";
}

void validate(const CbrProfile& profile) {
  if (!(profile.rate_bps > 0.0)) throw ConfigError("CBR rate must be > 0");
  if (profile.packet_size_bytes == 0) throw ConfigError("CBR packet size must be > 0");
  if (profile.ramp_duration < SimTime()) throw ConfigError("CBR ramp must be >= 0");
  if (profile.start_at < SimTime()) throw ConfigError("CBR start must be >= 0");
}

SimTime cbr_interval(const CbrProfile& profile) {
  const auto rate = static_cast<uint64_t>(std::llround(profile.rate_bps));
  const uint64_t bit_ns = uint64_t{profile.packet_size_bytes} * 8 * 1'000'000'000ULL;
  return SimTime::nanoseconds(static_cast<int64_t>(bit_ns / rate));
}

SimTime cbr_emission_time(const CbrProfile& profile, uint64_t k) {
  if (profile.ramp_duration == SimTime()) {
    return profile.start_at + cbr_interval(profile) * static_cast<int64_t>(k);
  }
  // Cumulative bits under a linear ramp: R t^2 / (2T) for t < T, then
  // R T / 2 + R (t - T).
  const double rate = profile.rate_bps;
  const double ramp_s = profile.ramp_duration.to_seconds();
  const double bits = static_cast<double>(k) * profile.packet_size_bytes * 8.0;
  const double ramp_bits = rate * ramp_s / 2.0;
  double t;
  if (bits < ramp_bits) {
    t = std::sqrt(2.0 * ramp_s * bits / rate);
  } else {
    t = ramp_s + (bits - ramp_bits) / rate;
  }
  return profile.start_at + SimTime::from_seconds(t);
}

CbrSource::CbrSource(Engine& engine, FlowId flow, CbrProfile profile, PacketHandler emit)
    : engine_(engine), flow_(flow), profile_(profile), emit_(std::move(emit)) {
  validate(profile_);
}

void CbrSource::start() {
  const SimTime first = cbr_emission_time(profile_, 0);
  if (profile_.stop_at && first > *profile_.stop_at) return;
  if (profile_.packet_limit && *profile_.packet_limit == 0) return;
  engine_.schedule(first, [this] { fire(); });
}

void CbrSource::fire() {
  Packet p;
  p.flow = flow_;
  p.seq = next_k_++;
  p.size_bytes = profile_.packet_size_bytes;
  p.created_at = engine_.now();
  p.departed_source = engine_.now();
  ++sent_packets_;
  emit_(std::move(p));

  if (profile_.packet_limit && next_k_ >= *profile_.packet_limit) return;
  const SimTime next = cbr_emission_time(profile_, next_k_);
  if (profile_.stop_at && next > *profile_.stop_at) return;
  engine_.schedule(next, [this] { fire(); });
}

void ProbeMatcher::record_sent(uint64_t seq, SimTime at) {
  if (seq != records_.size()) throw SimulationFault("probe sequence numbers must be dense");
  records_.push_back(ProbeRecord{seq, at, std::nullopt});
}

bool ProbeMatcher::on_echo(uint64_t seq, SimTime at) {
  if (seq >= records_.size() || records_[seq].echoed_at) {
    ++unmatched_;
    return false;
  }
  records_[seq].echoed_at = at;
  ++completed_;
  return true;
}

ProbeSource::ProbeSource(Engine& engine, SimTime start_at, SimTime period, uint64_t count,
                         uint32_t size_bytes, ProbeMatcher& matcher, PacketHandler emit,
                         std::optional<RngStream> phase)
    : engine_(engine),
      start_at_(start_at),
      period_(period),
      count_(count),
      size_bytes_(size_bytes),
      matcher_(matcher),
      emit_(std::move(emit)),
      phase_(std::move(phase)) {
  if (period_ <= SimTime()) throw ConfigError("probe period must be > 0");
  if (size_bytes_ == 0) throw ConfigError("probe size must be > 0");
}

void ProbeSource::start() {
  if (count_ > 0) schedule_next();
}

void ProbeSource::schedule_next() {
  SimTime at = start_at_ + period_ * static_cast<int64_t>(sent_);
  if (phase_) at += SimTime::nanoseconds(static_cast<int64_t>(phase_->uniform() * static_cast<double>(period_.ns())));
  engine_.schedule(at, [this] { fire(); });
}

void ProbeSource::fire() {
  Packet p;
  p.flow = FlowId::kProbe;
  p.seq = sent_;
  p.size_bytes = size_bytes_;
  p.created_at = engine_.now();
  p.departed_source = engine_.now();
  matcher_.record_sent(sent_, engine_.now());
  ++sent_;
  emit_(std::move(p));
  if (sent_ < count_) schedule_next();
}

}  // namespace v1sim
