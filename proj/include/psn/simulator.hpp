#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "psn/duty_gate.hpp"
#include "psn/event_queue.hpp"
#include "psn/link.hpp"
#include "psn/sim_time.hpp"
#include "psn/tcp_newreno.hpp"
#include "psn/topology.hpp"
#include "psn/trace.hpp"

namespace psn {

struct SimConfig {
  int node_count = 30;
  LinkParams link{};
  TcpParams tcp{};
  int data_bytes = 1000;
  int ack_bytes = 40;

  double duty = 1.0;
  double duty_period_s = 1.0;
  double duty_phase_s = 0.0;

  double duration_s = 1000.0;
  double sample_dt_s = 0.01;

  bool perturbation = false;
  double perturb_interval_s = 100.0;
  double perturb_burst_s = 10.0;

  std::uint64_t seed = 0;  // identity for manifests; the trajectory itself is deterministic

  bool record_trace = false;     // full event rows; keep off for long runs
  bool record_transits = true;   // per-flow delivery latencies
  bool record_cwnd = true;
  bool audit_each_sample = false;  // conservation check at every sample flush
};

// [start, end) intervals when the extra source is allowed to offer data.
std::vector<std::pair<Micros, Micros>> perturbation_window_list(double duration_s,
                                                                double interval_s,
                                                                double burst_s);

struct ConservationAudit {
  std::int64_t injected = 0;
  std::int64_t delivered = 0;       // DATA consumed at its destination
  std::int64_t acks_consumed = 0;   // ACK consumed at the flow source
  std::int64_t dropped = 0;         // every dropped copy, DATA and ACK alike
  std::int64_t in_buffers = 0;      // sitting in link queues (head in service included)
  std::int64_t in_propagation = 0;  // between TransmitComplete and PacketArrival
  bool balanced() const {
    return injected == delivered + acks_consumed + dropped + in_buffers + in_propagation;
  }
};

struct RunResult {
  SimConfig config;
  std::vector<Flow> flows;  // standard flows; the perturbation flow is not listed
  int perturbation_flow_id = -1;

  std::vector<FlowCounters> counters;          // standard flows, plus one slot for the extra flow
  std::vector<std::vector<float>> cwnd;        // [flow][sample], standard flows
  std::vector<std::vector<float>> transits_s;  // [flow][delivery] latency, standard flows
  std::vector<TraceRow> trace;

  std::size_t sample_count = 0;
  double sample_dt_s = 0.01;
  ConservationAudit final_audit;
  std::int64_t audit_failures = 0;
};

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);

  RunResult run();

  ConservationAudit audit() const;
  SimTime now() const { return queue_.now(); }

 private:
  struct FlowState {
    Flow flow;
    TcpConn conn;
    TcpReceiver receiver;
  };

  bool gate_active(int f, SimTime t);
  void try_send(int f);
  void transmit_data(int f, std::int64_t seq, bool retransmission);
  void send_ack(int f, std::int64_t ack_seq);
  void offer(Link& link, const Packet& p);
  void start_service(Link& link);
  void apply_actions(int f, const TcpActions& actions);

  void handle_arrival(const SimEvent& ev);
  void handle_transmit_complete(const SimEvent& ev);
  void handle_timer(const SimEvent& ev);
  void handle_gate_toggle(const SimEvent& ev);

  void flush_samples(Micros bound_us, bool inclusive);
  void record_sample();
  void trace_row(TraceEvent e, int flow, int node, std::int64_t seq);

  SimConfig cfg_;
  LineTopology topo_;
  std::vector<FlowState> flows_;  // standard flows, then optionally the perturbation flow
  int n_standard_ = 0;
  int pert_id_ = -1;
  DutyGate gate_;
  std::vector<std::pair<Micros, Micros>> pert_windows_;
  std::size_t pert_idx_ = 0;

  EventQueue queue_;
  Micros duration_us_ = 0;
  Micros sample_dt_us_ = 0;
  Micros next_sample_us_ = 0;
  std::uint64_t next_packet_id_ = 0;

  std::int64_t injected_ = 0;
  std::int64_t delivered_ = 0;
  std::int64_t acks_consumed_ = 0;
  std::int64_t dropped_copies_ = 0;

  RunResult result_;
};

}  // namespace psn
