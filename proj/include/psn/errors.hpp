#pragma once

#include <stdexcept>
#include <string>

namespace psn {

// Domain error taxonomy. Everything derives from SimError so callers can
// catch the whole family at the CLI boundary.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchedulingInPast : SimError {
  using SimError::SimError;
};

struct InvalidNodeCount : SimError {
  using SimError::SimError;
};

struct InvalidSchedule : SimError {
  using SimError::SimError;
};

struct InvalidConfig : SimError {
  using SimError::SimError;
};

struct InvalidCounts : SimError {
  using SimError::SimError;
};

struct SeriesTooShort : SimError {
  using SimError::SimError;
};

struct NonDivisibleWindow : SimError {
  using SimError::SimError;
};

struct MissingTrace : SimError {
  using SimError::SimError;
};

struct ZeroVariance : SimError {
  using SimError::SimError;
};

struct AllZeroSpectrum : SimError {
  using SimError::SimError;
};

struct NoValidNeighbors : SimError {
  using SimError::SimError;
};

struct UsageError : SimError {
  using SimError::SimError;
};

}  // namespace psn
