#pragma once

#include "psn/sim_time.hpp"

namespace psn {

// Periodic on/off gate in front of a traffic source: on for x*period, off
// for the remainder of every cycle.
struct DutyGate {
  double x = 1.0;
  Micros period_us = 1'000'000;
  Micros phase_us = 0;

  Micros on_us() const { return static_cast<Micros>(std::llround(x * static_cast<double>(period_us))); }
};

inline bool duty_active(const DutyGate& gate, SimTime now) {
  Micros t = (now.us() - gate.phase_us) % gate.period_us;
  if (t < 0) t += gate.period_us;
  return t < gate.on_us();
}

}  // namespace psn
