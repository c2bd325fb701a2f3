#include "psn/simulator.hpp"

#include <cmath>

#include "psn/errors.hpp"

namespace psn {

std::vector<std::pair<Micros, Micros>> perturbation_window_list(double duration_s,
                                                                double interval_s,
                                                                double burst_s) {
  if (interval_s <= burst_s || burst_s <= 0)
    throw InvalidSchedule("burst length must be positive and shorter than the interval");
  const Micros interval = micros_from_seconds(interval_s);
  const Micros burst = micros_from_seconds(burst_s);
  const Micros duration = micros_from_seconds(duration_s);
  std::vector<std::pair<Micros, Micros>> windows;
  const std::int64_t count = duration >= burst ? (duration - burst) / interval : 0;
  windows.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 1; i <= count; ++i)
    windows.emplace_back(i * interval, i * interval + burst);
  return windows;
}

Simulator::Simulator(const SimConfig& cfg)
    : cfg_(cfg), topo_(cfg.node_count, cfg.link) {
  if (cfg.duty < 0.0 || cfg.duty > 1.0) throw InvalidConfig("duty ratio outside [0,1]");
  if (cfg.duration_s <= 0.0) throw InvalidConfig("duration must be positive");
  if (cfg.sample_dt_s <= 0.0) throw InvalidConfig("sample interval must be positive");

  gate_.x = cfg.duty;
  gate_.period_us = micros_from_seconds(cfg.duty_period_s);
  gate_.phase_us = micros_from_seconds(cfg.duty_phase_s);
  if (gate_.period_us <= 0) throw InvalidConfig("duty period must be positive");

  duration_us_ = micros_from_seconds(cfg.duration_s);
  sample_dt_us_ = micros_from_seconds(cfg.sample_dt_s);

  for (const Flow& f : LineTopology::crossing_flows(cfg.node_count))
    flows_.push_back(FlowState{f, TcpConn(f.id, cfg.tcp), TcpReceiver{}});
  n_standard_ = static_cast<int>(flows_.size());

  if (cfg.perturbation) {
    pert_id_ = n_standard_;
    Flow extra{pert_id_, 0, cfg.node_count - 1};
    flows_.push_back(FlowState{extra, TcpConn(pert_id_, cfg.tcp), TcpReceiver{}});
    pert_windows_ = perturbation_window_list(cfg.duration_s, cfg.perturb_interval_s,
                                             cfg.perturb_burst_s);
  }

  result_.config = cfg_;
  result_.sample_dt_s = cfg.sample_dt_s;
  result_.perturbation_flow_id = pert_id_;
  for (int i = 0; i < n_standard_; ++i) result_.flows.push_back(flows_[i].flow);
  result_.counters.assign(flows_.size(), FlowCounters{});
  if (cfg.record_cwnd) {
    const std::size_t expected =
        static_cast<std::size_t>((duration_us_ + sample_dt_us_ - 1) / sample_dt_us_);
    result_.cwnd.assign(n_standard_, {});
    for (auto& series : result_.cwnd) series.reserve(expected);
  }
  if (cfg.record_transits) result_.transits_s.assign(n_standard_, {});
}

bool Simulator::gate_active(int f, SimTime t) {
  if (f != pert_id_) return duty_active(gate_, t);
  while (pert_idx_ < pert_windows_.size() && t.us() >= pert_windows_[pert_idx_].second)
    ++pert_idx_;
  return pert_idx_ < pert_windows_.size() && t.us() >= pert_windows_[pert_idx_].first;
}

void Simulator::trace_row(TraceEvent e, int flow, int node, std::int64_t seq) {
  if (cfg_.record_trace) result_.trace.push_back(TraceRow{queue_.now(), e, flow, node, seq});
}

void Simulator::apply_actions(int f, const TcpActions& actions) {
  for (std::int64_t seq : actions.retransmit) transmit_data(f, seq, true);
  if (actions.set_timer) {
    SimEvent ev;
    ev.at = *actions.set_timer;
    ev.kind = EventKind::TimerFire;
    ev.flow = f;
    ev.timer_generation = flows_[static_cast<std::size_t>(f)].conn.timer_generation();
    queue_.schedule(ev);
  }
  // cancel_timer needs no work: a stale generation dies at fire time
}

void Simulator::try_send(int f) {
  auto& st = flows_[static_cast<std::size_t>(f)];
  st.conn.restart_after_idle(queue_.now());
  while (st.conn.window_available() > 0 && gate_active(f, queue_.now()))
    transmit_data(f, st.conn.next_seq(), false);
}

void Simulator::transmit_data(int f, std::int64_t seq, bool retransmission) {
  auto& st = flows_[static_cast<std::size_t>(f)];
  TcpActions a = st.conn.register_send(seq, queue_.now(), retransmission);
  Packet p;
  p.id = next_packet_id_++;
  p.flow = f;
  p.kind = PacketKind::Data;
  p.seq = seq;
  p.size_bytes = cfg_.data_bytes;
  p.created_at = queue_.now();
  p.hop_count = 0;
  auto& c = result_.counters[static_cast<std::size_t>(f)];
  ++c.sent;
  if (retransmission) ++c.retransmits;
  trace_row(retransmission ? TraceEvent::Retransmit : TraceEvent::Send, f, st.flow.src, seq);
  ++injected_;
  offer(topo_.link(topo_.next_link(st.flow.src, st.flow.dst)), p);
  apply_actions(f, a);
}

void Simulator::send_ack(int f, std::int64_t ack_seq) {
  auto& st = flows_[static_cast<std::size_t>(f)];
  Packet p;
  p.id = next_packet_id_++;
  p.flow = f;
  p.kind = PacketKind::Ack;
  p.seq = ack_seq;
  p.size_bytes = cfg_.ack_bytes;
  p.created_at = queue_.now();
  p.hop_count = 0;
  ++injected_;
  offer(topo_.link(topo_.next_link(st.flow.dst, st.flow.src)), p);
}

void Simulator::offer(Link& link, const Packet& p) {
  if (enqueue_packet(link, p) == EnqueueResult::Dropped) {
    ++dropped_copies_;
    if (p.kind == PacketKind::Data)
      ++result_.counters[static_cast<std::size_t>(p.flow)].dropped;
    trace_row(TraceEvent::Drop, p.flow, link.from, p.seq);
    return;
  }
  if (link.buffer.size() == 1) start_service(link);
}

void Simulator::start_service(Link& link) {
  const Packet& head = link.buffer.front();
  link.busy = true;
  link.busy_until = queue_.now() + link.tx_time_us(head);
  SimEvent ev;
  ev.at = link.busy_until;
  ev.kind = EventKind::TransmitComplete;
  ev.link = link.id;
  queue_.schedule(ev);
}

void Simulator::handle_transmit_complete(const SimEvent& ev) {
  Link& link = topo_.link(ev.link);
  Packet p = link.buffer.front();
  link.buffer.pop_front();
  SimEvent arrival;
  arrival.at = queue_.now() + link.prop_delay_us;
  arrival.kind = EventKind::PacketArrival;
  arrival.node = link.to;
  arrival.packet = p;
  queue_.schedule(arrival);
  if (!link.buffer.empty())
    start_service(link);
  else
    link.busy = false;
}

void Simulator::handle_arrival(const SimEvent& ev) {
  Packet p = *ev.packet;
  ++p.hop_count;
  auto& st = flows_[static_cast<std::size_t>(p.flow)];

  if (p.kind == PacketKind::Data) {
    if (ev.node == st.flow.dst) {
      ++delivered_;
      ++result_.counters[static_cast<std::size_t>(p.flow)].delivered;
      if (cfg_.record_transits && p.flow < n_standard_)
        result_.transits_s[static_cast<std::size_t>(p.flow)].push_back(
            static_cast<float>(static_cast<double>(queue_.now() - p.created_at) * 1e-6));
      trace_row(TraceEvent::Recv, p.flow, ev.node, p.seq);
      send_ack(p.flow, st.receiver.on_data(p.seq));
      return;
    }
    offer(topo_.link(topo_.next_link(ev.node, st.flow.dst)), p);
    return;
  }

  if (ev.node == st.flow.src) {
    ++acks_consumed_;
    TcpActions a = st.conn.on_ack(p.seq, queue_.now());
    apply_actions(p.flow, a);
    try_send(p.flow);
    return;
  }
  offer(topo_.link(topo_.next_link(ev.node, st.flow.src)), p);
}

void Simulator::handle_timer(const SimEvent& ev) {
  auto& st = flows_[static_cast<std::size_t>(ev.flow)];
  if (!st.conn.timer_current(ev.timer_generation, ev.at)) return;
  TcpActions a = st.conn.on_timeout(queue_.now());
  apply_actions(ev.flow, a);
  try_send(ev.flow);
}

void Simulator::handle_gate_toggle(const SimEvent& ev) {
  if (ev.flow < 0) {
    for (int f = 0; f < n_standard_; ++f) try_send(f);
    if (ev.flow == -1) {  // cycle boundary: chain the next one
      const Micros next = ev.at.us() + gate_.period_us;
      if (next < duration_us_) {
        SimEvent chain;
        chain.at = SimTime::from_us(next);
        chain.kind = EventKind::SourceGateToggle;
        chain.flow = -1;
        queue_.schedule(chain);
      }
    }
  } else {
    try_send(ev.flow);
  }
}

void Simulator::record_sample() {
  if (cfg_.record_cwnd)
    for (int f = 0; f < n_standard_; ++f)
      result_.cwnd[static_cast<std::size_t>(f)].push_back(
          static_cast<float>(flows_[static_cast<std::size_t>(f)].conn.cwnd()));
  ++result_.sample_count;
  if (cfg_.audit_each_sample && !audit().balanced()) ++result_.audit_failures;
}

void Simulator::flush_samples(Micros bound_us, bool inclusive) {
  while (next_sample_us_ < duration_us_ &&
         (next_sample_us_ < bound_us || (inclusive && next_sample_us_ == bound_us))) {
    record_sample();
    next_sample_us_ += sample_dt_us_;
  }
}

ConservationAudit Simulator::audit() const {
  ConservationAudit a;
  a.injected = injected_;
  a.delivered = delivered_;
  a.acks_consumed = acks_consumed_;
  a.dropped = dropped_copies_;
  for (const Link& l : topo_.links()) a.in_buffers += static_cast<std::int64_t>(l.buffer.size());
  for (const SimEvent& ev : queue_.pending())
    if (ev.kind == EventKind::PacketArrival) ++a.in_propagation;
  return a;
}

RunResult Simulator::run() {
  // First cycle boundary at or after t=0; later boundaries chain from it.
  Micros first = gate_.phase_us % gate_.period_us;
  if (first < 0) first += gate_.period_us;
  if (first == gate_.period_us) first = 0;
  SimEvent kick;
  kick.at = SimTime::from_us(first);
  kick.kind = EventKind::SourceGateToggle;
  kick.flow = -1;
  queue_.schedule(kick);
  if (first > 0 && duty_active(gate_, SimTime{})) {
    // Nonzero phase can leave the gate open at t=0, mid-cycle; one-shot kick.
    SimEvent once;
    once.kind = EventKind::SourceGateToggle;
    once.flow = -2;
    queue_.schedule(once);
  }
  for (const auto& w : pert_windows_) {
    if (w.first >= duration_us_) break;
    SimEvent wake;
    wake.at = SimTime::from_us(w.first);
    wake.kind = EventKind::SourceGateToggle;
    wake.flow = pert_id_;
    queue_.schedule(wake);
  }

  while (!queue_.empty() && queue_.peek().at.us() <= duration_us_) {
    flush_samples(queue_.peek().at.us(), true);
    SimEvent ev = queue_.pop();
    switch (ev.kind) {
      case EventKind::PacketArrival: handle_arrival(ev); break;
      case EventKind::TransmitComplete: handle_transmit_complete(ev); break;
      case EventKind::TimerFire: handle_timer(ev); break;
      case EventKind::SourceGateToggle: handle_gate_toggle(ev); break;
    }
  }
  flush_samples(duration_us_, false);

  result_.final_audit = audit();
  return std::move(result_);
}

}  // namespace psn
