#pragma once

#include <cmath>
#include <compare>
#include <cstdint>

namespace psn {

// Microseconds, the simulator's native tick. All event arithmetic is done on
// integers so that event ordering is exact and runs replay bit-identically.
using Micros = std::int64_t;

inline Micros micros_from_seconds(double s) {
  return static_cast<Micros>(std::llround(s * 1e6));
}

// A point on the simulation clock with 1 us resolution.
class SimTime {
 public:
  constexpr SimTime() = default;
  static constexpr SimTime from_us(Micros us) { return SimTime(us); }
  static SimTime from_seconds(double s) { return SimTime(micros_from_seconds(s)); }

  constexpr Micros us() const { return us_; }
  double seconds() const { return static_cast<double>(us_) * 1e-6; }

  constexpr SimTime operator+(Micros d) const { return SimTime(us_ + d); }
  constexpr SimTime operator-(Micros d) const { return SimTime(us_ - d); }
  constexpr Micros operator-(SimTime rhs) const { return us_ - rhs.us_; }

  auto operator<=>(const SimTime&) const = default;

 private:
  constexpr explicit SimTime(Micros us) : us_(us) {}
  Micros us_ = 0;
};

}  // namespace psn
