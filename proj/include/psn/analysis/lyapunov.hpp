#pragma once

#include <span>

namespace psn {

// Delay-embedding parameters for the divergence-rate estimate. fit_begin and
// fit_count select the expansion steps whose mean log distance is regressed;
// max_refs caps how many reference points are used (stride-sampled).
struct EmbeddingSpec {
  int dim = 5;
  int delay = 10;
  int theiler = 50;
  int fit_begin = 1;
  int fit_count = 30;
  int max_refs = 1000;
};

// Largest Lyapunov exponent in 1/second: for each reference point, track the
// distance to its nearest neighbor (Theiler-excluded, strictly positive)
// over successive steps, average the log distances, and fit a line over the
// chosen step range.
double largest_lyapunov(std::span<const double> series, double dt_s, const EmbeddingSpec& e = {});

}  // namespace psn
