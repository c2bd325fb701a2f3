#pragma once

#include <functional>
#include <vector>

#include "psn/config.hpp"
#include "psn/simulator.hpp"

namespace psn {

RunResult run_experiment(const ExperimentConfig& cfg);

// One cell of a duty sweep.
struct SweepCell {
  double duty = 0.0;
  bool perturbation = false;
};

std::vector<SweepCell> sweep_cells(const std::vector<double>& duty_grid, bool both_arms,
                                   bool perturbation_when_single);

// Run every cell and hand each result to `sink` in cell order. The sink
// consumes results one at a time so a long grid never holds more than a few
// runs in memory. Workers default to the PSN_WORKERS environment variable,
// then to the hardware thread count.
void run_sweep(const ExperimentConfig& base, const std::vector<SweepCell>& cells,
               const std::function<void(const SweepCell&, RunResult&&)>& sink,
               int workers = 0);

// "a:b:step" inclusive grid, e.g. 0.1:0.8:0.1.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace psn
