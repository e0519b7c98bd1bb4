#include "v1sim/experiments/testbed.h"

#include "v1sim/pon/fiber.h"
#include "v1sim/sim/errors.h"

namespace v1sim::experiments {

namespace {

constexpr uint32_t kTContMobile = 1;
constexpr uint32_t kTContOverload = 2;

// Switch port a flow leaves on. Probes share the mobile VLAN and port.
FlowId port_of(FlowId f) { return f == FlowId::kOverload ? FlowId::kOverload : FlowId::kMobileV1; }

}  // namespace

struct Testbed::Impl {
  Impl(Engine& engine, const ScenarioConfig& cfg, RunPlan plan);

  void drop(const Packet& p) {
    tracker.terminate(p.flow, p.seq);
    if (p.flow == FlowId::kMobileV1 && du) du->on_path_drop(p);
  }

  // Downlink, CU side to DU side.
  void dl_inject(Packet p);
  void dl_trunk(Packet p) { trunk_dl->send(degrade::mux(std::move(p), ports)); }
  void dl_switch_out(Packet p);
  void dl_host_out(Packet p);

  // Uplink, UE side to CU side.
  void ul_inject(Packet p);
  void ul_port(Packet p);
  void ul_after_port(Packet p);
  void ul_switch_out(Packet p);
  void ul_egress_out(Packet p);
  void ul_host_out(Packet p);

  uint64_t component_drops(FlowId f) const;

  Engine& engine;
  const ScenarioConfig& cfg;
  RunPlan plan;
  degrade::SwitchPortMap ports;
  metrics::PacketTracker tracker;
  PerFlowCount misrouted{};
  uint64_t overload_received = 0;
  std::vector<endpoints::Arrival> arrivals;

  std::unique_ptr<degrade::ImpairmentEngine> impair_dl;
  std::unique_ptr<degrade::ImpairmentEngine> impair_ul;
  std::unique_ptr<FifoLink> trunk_dl;
  std::unique_ptr<FifoLink> pon_downstream;
  std::array<std::unique_ptr<FifoLink>, kFlowCount> egress_dl;
  std::array<std::unique_ptr<FifoLink>, kFlowCount> port_ul;
  std::unique_ptr<pon::UpstreamTdma> tdma;
  std::unique_ptr<FifoLink> trunk_ul;
  std::array<std::unique_ptr<FifoLink>, kFlowCount> egress_ul;
  std::unique_ptr<endpoints::HostStack> host_du;
  std::unique_ptr<endpoints::HostStack> host_cu;
  std::unique_ptr<endpoints::ReceiverBudget> budget;
  std::unique_ptr<endpoints::DuEndpoint> du;
  std::unique_ptr<FlowSink> cu_sink;
  ProbeMatcher matcher;

  std::unique_ptr<CbrSource> mobile_source;
  std::unique_ptr<CbrSource> overload_source;
  std::unique_ptr<ProbeSource> probe_source;
};

Testbed::Impl::Impl(Engine& eng, const ScenarioConfig& c, RunPlan p) : engine(eng), cfg(c), plan(std::move(p)) {
  if (plan.downlink_mobile && plan.uplink_mobile) throw ConfigError("one mobile direction per run");
  ports.assign(FlowId::kMobileV1, cfg.vlan_mobile);
  ports.assign(FlowId::kOverload, cfg.vlan_overload);

  const bool pon_mode = plan.mode == Mode::kPon;
  const SimTime fiber = pon::propagation_delay(cfg.fiber_length_km, cfg.fiber_group_index);
  const DropHandler on_drop = [this](const Packet& pk) { drop(pk); };
  const double dl_background = plan.downlink_overload ? cfg.overload_downlink_bps : 0.0;
  const FifoLinkConfig port_cfg{cfg.switch_rate_bps, cfg.switch_buffer_bytes, SimTime(), 0.0};

  // Downlink.
  if (plan.downlink_degrade) {
    impair_dl = std::make_unique<degrade::ImpairmentEngine>(engine, *plan.downlink_degrade,
                                                            RngStream(cfg.seed, StreamId::kDegradeDownlink),
                                                            [this](Packet pk) { dl_trunk(std::move(pk)); });
  }
  trunk_dl = std::make_unique<FifoLink>(
      engine, FifoLinkConfig{cfg.switch_rate_bps, cfg.switch_buffer_bytes, SimTime(), dl_background},
      [this, pon_mode](Packet pk) {
        if (pon_mode) {
          pon_downstream->send(std::move(pk));
        } else {
          dl_switch_out(std::move(pk));
        }
      },
      on_drop);
  if (pon_mode) {
    pon_downstream = std::make_unique<FifoLink>(
        engine, FifoLinkConfig{cfg.pon_line_rate_bps, cfg.pon_downstream_buffer_bytes, fiber, dl_background},
        [this](Packet pk) { dl_switch_out(std::move(pk)); }, on_drop);
  }
  for (FlowId f : {FlowId::kMobileV1, FlowId::kOverload}) {
    egress_dl[flow_index(f)] = std::make_unique<FifoLink>(
        engine, port_cfg, [this](Packet pk) { host_du->receive(std::move(pk)); }, on_drop);
  }
  const endpoints::HostStackParams host{cfg.host_base, cfg.host_jitter};
  host_du = std::make_unique<endpoints::HostStack>(engine, host, RngStream(cfg.seed, StreamId::kHostDu),
                                                   [this](Packet pk) { dl_host_out(std::move(pk)); });
  budget = std::make_unique<endpoints::ReceiverBudget>(
      engine, endpoints::ReceiverBudgetParams{cfg.budget_rate_bps, cfg.budget_depth},
      RngStream(cfg.seed, StreamId::kReceiverBudget),
      [this](Packet pk) {
        tracker.terminate(pk.flow, pk.seq);
        du->receive(std::move(pk));
      },
      on_drop);
  if (plan.downlink_mobile) {
    du = std::make_unique<endpoints::DuEndpoint>(engine, endpoints::ReorderParams{cfg.du_deadline, cfg.du_capacity});
  }

  // Uplink.
  if (plan.uplink_degrade) {
    impair_ul = std::make_unique<degrade::ImpairmentEngine>(engine, *plan.uplink_degrade,
                                                            RngStream(cfg.seed, StreamId::kDegradeUplink),
                                                            [this](Packet pk) { ul_port(std::move(pk)); });
  }
  for (FlowId f : {FlowId::kMobileV1, FlowId::kOverload}) {
    port_ul[flow_index(f)] =
        std::make_unique<FifoLink>(engine, port_cfg, [this](Packet pk) { ul_after_port(std::move(pk)); }, on_drop);
    egress_ul[flow_index(f)] =
        std::make_unique<FifoLink>(engine, port_cfg, [this](Packet pk) { ul_egress_out(std::move(pk)); }, on_drop);
  }
  trunk_ul = std::make_unique<FifoLink>(engine, port_cfg, [this](Packet pk) { ul_switch_out(std::move(pk)); },
                                        on_drop);
  const bool uplink_used = plan.uplink_mobile || plan.uplink_overload || plan.probes;
  if (pon_mode && uplink_used) {
    pon::UpstreamConfig up;
    up.line_rate_bps = cfg.pon_line_rate_bps;
    up.capacity_bps = cfg.pon_capacity_bps;
    up.cycle = cfg.pon_cycle;
    up.ema_tau = cfg.pon_ema_tau;
    up.propagation = fiber;
    up.fragmentation = cfg.pon_fragmentation;
    up.tconts = {
        {kTContMobile, pon::TContType::kType3, cfg.pon_assured_mobile_bps, cfg.pon_tcont_queue_bytes},
        {kTContOverload, pon::TContType::kType3, cfg.pon_assured_overload_bps, cfg.pon_tcont_queue_bytes},
    };
    up.record_grants = plan.record_grants;
    tdma = std::make_unique<pon::UpstreamTdma>(engine, up, [this](Packet pk) { trunk_ul->send(std::move(pk)); });
  }
  host_cu = std::make_unique<endpoints::HostStack>(engine, host, RngStream(cfg.seed, StreamId::kHostCu),
                                                   [this](Packet pk) { ul_host_out(std::move(pk)); });
  cu_sink = std::make_unique<FlowSink>(engine);

  // Sources.
  if (plan.downlink_mobile) {
    mobile_source = std::make_unique<CbrSource>(engine, FlowId::kMobileV1, *plan.downlink_mobile,
                                                [this](Packet pk) { dl_inject(std::move(pk)); });
  } else if (plan.uplink_mobile) {
    mobile_source = std::make_unique<CbrSource>(engine, FlowId::kMobileV1, *plan.uplink_mobile,
                                                [this](Packet pk) { ul_inject(std::move(pk)); });
  }
  if (plan.uplink_overload && cfg.overload_uplink_bps > 0) {
    CbrProfile prof;
    prof.rate_bps = cfg.overload_uplink_bps;
    prof.packet_size_bytes = cfg.overload_packet_bytes;
    overload_source = std::make_unique<CbrSource>(engine, FlowId::kOverload, prof,
                                                  [this](Packet pk) { ul_inject(std::move(pk)); });
  }
  if (plan.probes) {
    probe_source = std::make_unique<ProbeSource>(engine, plan.probes->start, plan.probes->period, plan.probes->count,
                                                 plan.probes->size_bytes, matcher,
                                                 [this](Packet pk) { ul_inject(std::move(pk)); },
                                                 RngStream(cfg.seed, StreamId::kProbePhase));
  }
}

void Testbed::Impl::dl_inject(Packet p) {
  if (!p.echo) tracker.inject(p.flow, p.seq);
  if (impair_dl) {
    impair_dl->degrade(std::move(p));
  } else {
    dl_trunk(std::move(p));
  }
}

void Testbed::Impl::dl_switch_out(Packet p) {
  auto port = degrade::demux(p, ports);
  if (!port) {
    ++misrouted[flow_index(p.flow)];
    drop(p);
    return;
  }
  egress_dl[flow_index(*port)]->send(std::move(p));
}

void Testbed::Impl::dl_host_out(Packet p) {
  if (p.flow == FlowId::kProbe) {
    tracker.terminate(p.flow, p.seq);
    matcher.on_echo(p.seq, engine.now());
    return;
  }
  budget->receive(std::move(p));
}

void Testbed::Impl::ul_inject(Packet p) {
  tracker.inject(p.flow, p.seq);
  if (impair_ul && p.flow != FlowId::kOverload) {
    impair_ul->degrade(std::move(p));
  } else {
    ul_port(std::move(p));
  }
}

void Testbed::Impl::ul_port(Packet p) {
  const FlowId port = port_of(p.flow);
  port_ul[flow_index(port)]->send(degrade::mux(std::move(p), ports));
}

void Testbed::Impl::ul_after_port(Packet p) {
  if (!tdma) {
    trunk_ul->send(std::move(p));
    return;
  }
  Packet meta;
  meta.flow = p.flow;
  meta.seq = p.seq;
  const uint32_t tcont = port_of(p.flow) == FlowId::kOverload ? kTContOverload : kTContMobile;
  if (!tdma->enqueue(tcont, std::move(p))) drop(meta);
}

void Testbed::Impl::ul_switch_out(Packet p) {
  auto port = degrade::demux(p, ports);
  if (!port) {
    ++misrouted[flow_index(p.flow)];
    drop(p);
    return;
  }
  egress_ul[flow_index(*port)]->send(std::move(p));
}

void Testbed::Impl::ul_egress_out(Packet p) {
  if (p.flow == FlowId::kOverload) {
    tracker.terminate(p.flow, p.seq);
    ++overload_received;
    return;
  }
  host_cu->receive(std::move(p));
}

void Testbed::Impl::ul_host_out(Packet p) {
  if (p.flow == FlowId::kProbe) {
    // EPC echo back down to the UE.
    p.echo = true;
    dl_inject(std::move(p));
    return;
  }
  tracker.terminate(p.flow, p.seq);
  if (plan.record_uplink_arrivals) arrivals.push_back({engine.now(), p.size_bytes});
  cu_sink->sink_record(std::move(p));
}

uint64_t Testbed::Impl::component_drops(FlowId f) const {
  uint64_t n = misrouted[flow_index(f)];
  for (const FifoLink* l : {trunk_dl.get(), pon_downstream.get(), trunk_ul.get()}) {
    if (l) n += l->drops(f);
  }
  for (const auto* set : {&egress_dl, &port_ul, &egress_ul}) {
    for (const auto& l : *set) {
      if (l) n += l->drops(f);
    }
  }
  if (tdma) n += tdma->total_drops(f);
  if (f == FlowId::kMobileV1) n += budget->drops();
  return n;
}

Testbed::Testbed(const ScenarioConfig& cfg, RunPlan plan) : impl_(std::make_unique<Impl>(engine_, cfg, std::move(plan))) {}

Testbed::~Testbed() = default;

RunResult Testbed::run(SimTime end) {
  Impl& m = *impl_;
  if (m.mobile_source) m.mobile_source->start();
  if (m.overload_source) m.overload_source->start();
  if (m.probe_source) m.probe_source->start();
  if (m.tdma) m.tdma->start(SimTime());
  engine_.run_until(end);

  RunResult r;
  auto& mob = r.ledgers[flow_index(FlowId::kMobileV1)];
  if (m.mobile_source) mob.sent = m.mobile_source->sent_packets();
  if (m.du) {
    const auto& buf = m.du->buffer();
    mob.accepted = buf.accepted();
    mob.late = buf.late();
    mob.held = buf.held();
    mob.gap_loss = buf.gap_loss();
    r.reorder_forced = buf.forced();
  } else {
    mob.accepted = m.cu_sink->received(FlowId::kMobileV1);
  }
  auto& ovl = r.ledgers[flow_index(FlowId::kOverload)];
  if (m.overload_source) ovl.sent = m.overload_source->sent_packets();
  ovl.accepted = m.overload_received;
  auto& prb = r.ledgers[flow_index(FlowId::kProbe)];
  if (m.probe_source) prb.sent = m.probe_source->sent_packets();
  prb.accepted = m.matcher.completed();
  for (FlowId f : kAllFlows) {
    auto& l = r.ledgers[flow_index(f)];
    l.dropped = m.component_drops(f);
    l.in_flight = m.tracker.alive(f);
    r.misrouted += m.misrouted[flow_index(f)];
  }
  r.audit = metrics::conservation_audit(r.ledgers);
  r.tracker_violations = m.tracker.violations();
  if (r.tracker_violations > 0 || m.matcher.unmatched() > 0) {
    r.audit.pass = false;
    r.audit.mismatches.push_back("packet tracker saw a terminal event for an unknown packet");
  }
  r.uplink_mobile_arrivals = std::move(m.arrivals);
  r.probes = m.matcher.records();
  r.budget_drops = m.budget->drops();
  if (m.tdma) {
    r.pon_cycles = m.tdma->cycles();
    r.pon_capacity_violations = m.tdma->capacity_violations();
    r.pon_capacity_bytes = m.tdma->capacity_bytes();
    r.grant_log = m.tdma->grant_log();
  }
  r.events = engine_.dispatched();
  r.ended_at = engine_.now();
  return r;
}

}  // namespace v1sim::experiments
