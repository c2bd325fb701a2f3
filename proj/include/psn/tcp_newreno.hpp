#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "psn/sim_time.hpp"

namespace psn {

enum class TcpMode : std::uint8_t { SlowStart, CongestionAvoidance, FastRecovery };

struct TcpParams {
  double initial_cwnd = 1.0;
  double initial_ssthresh = 64.0;
  // Advertised receive window in segments: cwnd never grows past this.
  // Without the bound, long flows park unbounded standing queues along the
  // path and drop-tail locks the short cross flows out entirely.
  double max_cwnd = 20.0;
  double rto_min_s = 0.2;
  double rto_initial_s = 1.0;
  double rto_max_s = 64.0;
  // Window to resume with after an idle restart: min(restart_cwnd, cwnd),
  // per RFC 5681's RW = min(IW, cwnd) with the RFC 3390 initial window,
  // which is 4 segments at a 1000-byte MSS. Restarting from 4 instead of 1
  // keeps a periodically gated source from re-running the whole doubling
  // ladder every cycle.
  double restart_cwnd = 4.0;
  int dupack_threshold = 3;
};

// What the connection wants the event loop to do after a transition.
// Sends of *new* data are not listed here: the owner pulls them by checking
// window_available() against the duty gate, which keeps the state machine
// pure and lets property tests drive it without an event loop.
struct TcpActions {
  std::vector<std::int64_t> retransmit;  // seqs to resend now
  std::optional<SimTime> set_timer;      // new retransmission deadline
  bool cancel_timer = false;
};

// NewReno sender state. Sequence numbers count MSS-sized segments;
// highest_acked is the cumulative ACK point (first unacked seq) and
// next_seq the first never-sent seq. cwnd holds the uninflated window:
// during fast recovery the dup-ACK inflation lives in fr_window so sampled
// traces show the congestion-control value, not the inflation artifact.
class TcpConn {
 public:
  TcpConn() = default;
  TcpConn(int flow_id, const TcpParams& params, SimTime now = SimTime{})
      : flow_(flow_id),
        params_(params),
        cwnd_(std::min(params.initial_cwnd, params.max_cwnd)),
        ssthresh_(params.initial_ssthresh),
        rto_us_(micros_from_seconds(params.rto_initial_s)) {
    (void)now;
    if (cwnd_ >= ssthresh_) mode_ = TcpMode::CongestionAvoidance;
  }

  int flow_id() const { return flow_; }
  double cwnd() const { return cwnd_; }
  double ssthresh() const { return ssthresh_; }
  TcpMode mode() const { return mode_; }
  int dup_acks() const { return dup_acks_; }
  std::int64_t highest_acked() const { return highest_acked_; }
  std::int64_t next_seq() const { return next_seq_; }
  std::int64_t recover() const { return recover_; }
  std::size_t in_flight() const { return in_flight_.size(); }
  // Window actually governing transmission: inflated during fast recovery,
  // but never beyond what the receiver advertises. Outside recovery, the
  // first two duplicate ACKs each allow one extra segment out (limited
  // transmit): a sender with a one- or two-segment window can then still
  // draw enough duplicate ACKs to enter fast recovery rather than stalling
  // into a timeout whenever one loss eats the whole window.
  double effective_window() const {
    const double w = mode_ == TcpMode::FastRecovery
                         ? fr_window_
                         : cwnd_ + std::min(dup_acks_, 2);
    return std::min(w, params_.max_cwnd);
  }
  bool has_unacked() const { return !in_flight_.empty(); }
  double rto_seconds() const { return static_cast<double>(backed_off_rto_us()) * 1e-6; }

  std::optional<SimTime> timer_deadline() const { return timer_deadline_; }
  std::uint64_t timer_generation() const { return timer_generation_; }

  // max(0, floor(window) - in_flight). During fast recovery the window is
  // the inflated one, per RFC 6582; outside it, plain cwnd.
  std::int64_t window_available() const {
    const std::int64_t cap = static_cast<std::int64_t>(std::floor(effective_window()));
    const std::int64_t used = static_cast<std::int64_t>(in_flight_.size());
    return cap > used ? cap - used : 0;
  }

  // Slow-start restart: a sender that has been silent long enough for its
  // RTO to expire has lost its ACK clock, so resuming with the old window
  // would dump a full burst into the path. Shrink back to the restart
  // window (never growing it) and probe again. ssthresh keeps its memory
  // of the last congestion event. Call before checking window_available()
  // when a paused source resumes.
  void restart_after_idle(SimTime now) {
    if (!in_flight_.empty() || !last_send_) return;
    if (now - *last_send_ <= backed_off_rto_us()) return;
    cwnd_ = std::min(cwnd_, params_.restart_cwnd);
    fr_window_ = cwnd_;
    mode_ = cwnd_ >= ssthresh_ ? TcpMode::CongestionAvoidance : TcpMode::SlowStart;
    dup_acks_ = 0;
  }

  // Record a transmission (new or retransmitted copy of `seq`).
  // Starts the retransmission timer if it is not already running.
  TcpActions register_send(std::int64_t seq, SimTime now, bool retransmission) {
    TcpActions actions;
    last_send_ = now;
    auto [it, inserted] = in_flight_.try_emplace(seq, SendInfo{now, retransmission});
    if (!inserted) {
      it->second.retransmitted = true;  // Karn: no RTT sample from this seq
      it->second.sent_at = now;
    }
    if (seq >= next_seq_) next_seq_ = seq + 1;
    if (!timer_deadline_) {
      actions.set_timer = arm_timer(now);
    }
    return actions;
  }

  // Cumulative ACK processing: ack_seq is the receiver's next expected seq.
  TcpActions on_ack(std::int64_t ack_seq, SimTime now) {
    TcpActions actions;
    if (ack_seq > highest_acked_) {
      const std::int64_t newly_acked = ack_seq - highest_acked_;
      sample_rtt(ack_seq - 1, now);
      drop_acked_below(ack_seq);
      highest_acked_ = ack_seq;
      rto_backoff_ = 0;

      if (mode_ == TcpMode::FastRecovery) {
        if (ack_seq >= recover_) {
          // Full ACK: recovery complete, window deflates to ssthresh.
          cwnd_ = ssthresh_;
          fr_window_ = cwnd_;
          mode_ = TcpMode::CongestionAvoidance;
          dup_acks_ = 0;
        } else {
          // Partial ACK: the next segment is lost too. Retransmit it and
          // deflate the inflated window by the amount acked, plus one.
          actions.retransmit.push_back(ack_seq);
          mark_retransmitted(ack_seq);
          fr_window_ = std::max(fr_window_ - static_cast<double>(newly_acked) + 1.0, 1.0);
          dup_acks_ = 0;
        }
      } else {
        dup_acks_ = 0;
        if (mode_ == TcpMode::SlowStart) {
          cwnd_ = std::min(cwnd_ + 1.0, params_.max_cwnd);
          if (cwnd_ >= ssthresh_) mode_ = TcpMode::CongestionAvoidance;
        } else {
          // Integer-window accounting: +1 MSS per full window of ACKs, so
          // ten ACKs take a window of 10 to exactly 11.
          cwnd_ = std::min(cwnd_ + 1.0 / std::floor(cwnd_), params_.max_cwnd);
        }
      }

      if (in_flight_.empty()) {
        disarm_timer();
        actions.cancel_timer = true;
      } else {
        actions.set_timer = arm_timer(now);
      }
    } else if (ack_seq == highest_acked_ && !in_flight_.empty()) {
      ++dup_acks_;
      if (mode_ == TcpMode::FastRecovery) {
        fr_window_ += 1.0;  // each further dup ACK signals another departure
      } else if (dup_acks_ == params_.dupack_threshold && highest_acked_ >= recover_) {
        // The recover guard keeps dup ACKs from a pre-timeout flight from
        // forcing a second reduction for the same loss event.
        TcpActions fr = on_triple_dup_ack(now);
        actions.retransmit.insert(actions.retransmit.end(), fr.retransmit.begin(), fr.retransmit.end());
        if (fr.set_timer) actions.set_timer = fr.set_timer;
      }
    }
    // ack_seq < highest_acked_: stale, ignore.
    return actions;
  }

  // Third duplicate ACK: halve, enter fast recovery, retransmit the hole.
  TcpActions on_triple_dup_ack(SimTime now) {
    TcpActions actions;
    ssthresh_ = std::max(std::floor(cwnd_ / 2.0), 2.0);
    cwnd_ = ssthresh_;
    fr_window_ = ssthresh_ + static_cast<double>(params_.dupack_threshold);
    mode_ = TcpMode::FastRecovery;
    recover_ = next_seq_;
    actions.retransmit.push_back(highest_acked_);
    mark_retransmitted(highest_acked_);
    actions.set_timer = arm_timer(now);
    return actions;
  }

  // Retransmission timeout: collapse to one segment and slow-start again,
  // with exponential RTO backoff. Everything outstanding is presumed lost,
  // so the in-flight set is emptied; gaps the receiver still has after the
  // first retransmission come back as dup ACKs and go through fast
  // retransmit. recover advances so dup ACKs from the old flight cannot
  // force a second reduction.
  TcpActions on_timeout(SimTime now) {
    TcpActions actions;
    const bool had_unacked = !in_flight_.empty() || highest_acked_ < next_seq_;
    ssthresh_ = std::max(std::floor(cwnd_ / 2.0), 2.0);
    cwnd_ = 1.0;
    fr_window_ = 1.0;
    mode_ = TcpMode::SlowStart;
    dup_acks_ = 0;
    recover_ = next_seq_;
    if (rto_backoff_ < 16) ++rto_backoff_;
    in_flight_.clear();
    if (had_unacked) actions.retransmit.push_back(highest_acked_);
    actions.set_timer = arm_timer(now);
    return actions;
  }

  // True if a TimerFire event with this generation is still current.
  bool timer_current(std::uint64_t generation, SimTime at) const {
    return timer_deadline_ && generation == timer_generation_ && *timer_deadline_ == at;
  }

 private:
  struct SendInfo {
    SimTime sent_at;
    bool retransmitted = false;
  };

  void drop_acked_below(std::int64_t ack_seq) {
    auto it = in_flight_.begin();
    while (it != in_flight_.end() && it->first < ack_seq) it = in_flight_.erase(it);
  }

  void mark_retransmitted(std::int64_t seq) {
    auto it = in_flight_.find(seq);
    if (it != in_flight_.end()) it->second.retransmitted = true;
  }

  // Jacobson/Karels estimator over the highest newly acked segment,
  // skipping retransmitted ones (Karn's rule).
  void sample_rtt(std::int64_t seq, SimTime now) {
    auto it = in_flight_.find(seq);
    if (it == in_flight_.end() || it->second.retransmitted) return;
    const double r = static_cast<double>(now - it->second.sent_at);
    if (srtt_us_ < 0) {
      srtt_us_ = r;
      rttvar_us_ = r / 2.0;
    } else {
      rttvar_us_ = 0.75 * rttvar_us_ + 0.25 * std::abs(srtt_us_ - r);
      srtt_us_ = 0.875 * srtt_us_ + 0.125 * r;
    }
    const double rto = srtt_us_ + std::max(4.0 * rttvar_us_, 1.0);
    const Micros lo = micros_from_seconds(params_.rto_min_s);
    const Micros hi = micros_from_seconds(params_.rto_max_s);
    rto_us_ = std::clamp(static_cast<Micros>(std::llround(rto)), lo, hi);
  }

  Micros backed_off_rto_us() const {
    const Micros hi = micros_from_seconds(params_.rto_max_s);
    Micros rto = rto_us_;
    for (int i = 0; i < rto_backoff_ && rto < hi; ++i) rto *= 2;
    return std::min(rto, hi);
  }

  SimTime arm_timer(SimTime now) {
    timer_deadline_ = now + backed_off_rto_us();
    ++timer_generation_;
    return *timer_deadline_;
  }

  void disarm_timer() {
    timer_deadline_.reset();
    ++timer_generation_;
  }

  int flow_ = -1;
  TcpParams params_;
  double cwnd_ = 1.0;
  double ssthresh_ = 64.0;
  double fr_window_ = 1.0;
  TcpMode mode_ = TcpMode::SlowStart;
  int dup_acks_ = 0;
  std::int64_t highest_acked_ = 0;
  std::int64_t next_seq_ = 0;
  std::int64_t recover_ = 0;
  std::map<std::int64_t, SendInfo> in_flight_;

  double srtt_us_ = -1.0;
  double rttvar_us_ = 0.0;
  Micros rto_us_ = 1'000'000;
  int rto_backoff_ = 0;
  std::optional<SimTime> timer_deadline_;
  std::uint64_t timer_generation_ = 0;
  std::optional<SimTime> last_send_;
};

// Cumulative-ACK receiver: tracks the next expected seq and buffers
// out-of-order arrivals (the receive window is unbounded).
class TcpReceiver {
 public:
  // Returns the ACK value (next expected seq) to send back.
  std::int64_t on_data(std::int64_t seq) {
    if (seq == next_expected_) {
      ++next_expected_;
      auto it = buffered_.begin();
      while (it != buffered_.end() && *it == next_expected_) {
        ++next_expected_;
        it = buffered_.erase(it);
      }
    } else if (seq > next_expected_) {
      buffered_.insert(seq);
    }
    return next_expected_;
  }

  std::int64_t next_expected() const { return next_expected_; }

 private:
  std::int64_t next_expected_ = 0;
  std::set<std::int64_t> buffered_;
};

}  // namespace psn
