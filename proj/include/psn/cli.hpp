#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psn {

struct Command {
  std::string name;  // simulate | sweep | bifurcation | pca | transitions | stats | report | help
  std::string help_text;  // filled when name == "help"

  std::string config_path;
  std::string profile = "desk";  // desk | paper
  std::optional<double> duty;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;
  std::optional<bool> perturb;     // on/off override for single runs
  std::string perturb_mode = "both";  // sweep arms: both | on | off
  std::string grid;                // a:b:step
  int flow = 15;
  std::string out_dir;
  std::string run_dir;
  bool force = false;
  bool with_trace = false;
  bool no_cwnd = false;
  bool with_lyapunov = false;
  int workers = 0;
};

// Throws UsageError on malformed arguments; --help yields name "help".
Command parse_args(const std::vector<std::string>& args);

int execute(const Command& cmd);

int run_cli(int argc, char** argv);

}  // namespace psn
