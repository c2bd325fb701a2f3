#include "psn/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "psn/analysis/lyapunov.hpp"
#include "psn/analysis/pca.hpp"
#include "psn/analysis/series.hpp"
#include "psn/analysis/state_graph.hpp"
#include "psn/analysis/stats.hpp"
#include "psn/errors.hpp"
#include "psn/io.hpp"
#include "psn/manifest.hpp"
#include "psn/scenario.hpp"

namespace psn {

namespace fs = std::filesystem;

namespace {

bool opt_present(const CLI::App* sub, const std::string& name) {
  const CLI::Option* o = sub->get_option_no_throw(name);
  return o && o->count() > 0;
}

}  // namespace

Command parse_args(const std::vector<std::string>& args) {
  Command cmd;
  CLI::App app{"Deterministic packet-switching-network simulator with a NewReno transport "
               "and a dynamical-systems analysis toolkit"};
  app.name("psn");
  app.require_subcommand(1);

  double duty = 0.0;
  std::uint64_t seed = 0;
  double duration = 0.0;
  std::string perturb_single = "off";

  auto add_run_opts = [&](CLI::App* sub) {
    sub->add_option("--config", cmd.config_path, "INI config file");
    sub->add_option("--profile", cmd.profile, "built-in profile: desk (1,000 s) or paper (10,000 s)")
        ->check(CLI::IsMember({"desk", "paper"}));
    sub->add_option("--duty", duty, "duty ratio override")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--seed", seed, "seed recorded in the manifest for replay");
    sub->add_option("--duration", duration, "run length override in seconds")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cmd.out_dir, "output directory")->required();
    sub->add_flag("--force", cmd.force, "overwrite artifacts left by a different config");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one experiment and write its artifacts");
  add_run_opts(simulate);
  add_out(simulate);
  simulate->add_option("--perturb", perturb_single, "periodic probe flow: on or off")
      ->check(CLI::IsMember({"on", "off"}));
  simulate->add_flag("--trace", cmd.with_trace, "record the full event trace (large)");
  simulate->add_flag("--no-cwnd", cmd.no_cwnd, "skip the cwnd series artifact");

  CLI::App* sweep = app.add_subcommand("sweep", "run a duty-ratio grid");
  add_run_opts(sweep);
  add_out(sweep);
  sweep->add_option("--grid", cmd.grid, "duty grid a:b:step")->required();
  sweep->add_option("--perturb", cmd.perturb_mode, "arms to run: both, on, or off")
      ->check(CLI::IsMember({"both", "on", "off"}));
  sweep->add_flag("--no-cwnd", cmd.no_cwnd, "skip per-cell cwnd series artifacts");
  sweep->add_option("--workers", cmd.workers, "parallel simulations (default: PSN_WORKERS or cores)");

  CLI::App* bif = app.add_subcommand("bifurcation", "peak scatter of one flow across a duty grid");
  add_run_opts(bif);
  add_out(bif);
  bif->add_option("--grid", cmd.grid, "duty grid a:b:step")->required();
  bif->add_option("--flow", cmd.flow, "flow index")->check(CLI::NonNegativeNumber);
  bif->add_option("--perturb", perturb_single, "probe flow during the runs: on or off")
      ->check(CLI::IsMember({"on", "off"}));

  CLI::App* pca = app.add_subcommand("pca", "project one flow's windows onto its top-2 components");
  pca->add_option("--run", cmd.run_dir, "directory of a finished simulate run")->required();
  pca->add_option("--flow", cmd.flow, "flow index")->check(CLI::NonNegativeNumber);
  pca->add_option("--out", cmd.out_dir, "output directory (default: the run directory)");

  CLI::App* trans = app.add_subcommand("transitions", "window-to-window state graph of one flow");
  trans->add_option("--run", cmd.run_dir, "directory of a finished simulate run")->required();
  trans->add_option("--flow", cmd.flow, "flow index")->check(CLI::NonNegativeNumber);
  trans->add_option("--out", cmd.out_dir, "output directory (default: the run directory)");

  CLI::App* stats = app.add_subcommand("stats", "per-flow summary table for a run or sweep");
  stats->add_option("--run", cmd.run_dir, "run or sweep directory")->required();
  stats->add_option("--out", cmd.out_dir, "output directory (default: the input directory)");
  stats->add_flag("--lyapunov", cmd.with_lyapunov, "estimate divergence rates too (slow)");

  CLI::App* report = app.add_subcommand("report", "summary tables and plot-ready files for a sweep");
  report->add_option("--run", cmd.run_dir, "sweep directory")->required();
  report->add_option("--out", cmd.out_dir, "output directory (default: <sweep>/report)");
  report->add_option("--flow", cmd.flow, "flow for peak/projection exports")
      ->check(CLI::NonNegativeNumber);
  report->add_flag("--lyapunov", cmd.with_lyapunov, "estimate divergence rates too (slow)");
  report->add_flag("--force", cmd.force, "overwrite artifacts left by a different config");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cmd.name = "help";
    cmd.help_text = app.help("", CLI::AppFormatMode::All);
    return cmd;
  } catch (const CLI::CallForAllHelp&) {
    cmd.name = "help";
    cmd.help_text = app.help("", CLI::AppFormatMode::All);
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* used = app.get_subcommands().front();
  cmd.name = used->get_name();
  if (opt_present(used, "--duty")) cmd.duty = duty;
  if (opt_present(used, "--seed")) cmd.seed = seed;
  if (opt_present(used, "--duration")) cmd.duration_s = duration;
  if (opt_present(used, "--perturb") && (cmd.name == "simulate" || cmd.name == "bifurcation"))
    cmd.perturb = (perturb_single == "on");
  return cmd;
}

namespace {

ExperimentConfig resolve_config(const Command& cmd) {
  ExperimentConfig cfg = cmd.profile == "paper" ? paper_profile() : desk_profile();
  if (!cmd.config_path.empty()) cfg = load_config(cmd.config_path);
  if (cmd.duty) cfg.sim.duty = *cmd.duty;
  if (cmd.seed) cfg.sim.seed = *cmd.seed;
  if (cmd.duration_s) cfg.sim.duration_s = *cmd.duration_s;
  if (cmd.perturb) cfg.sim.perturbation = *cmd.perturb;
  return cfg;
}

std::string cell_dir_name(const SweepCell& cell) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "duty_%.3f_%s", cell.duty, cell.perturbation ? "pert" : "nopert");
  return buf;
}

void write_run_artifacts(const fs::path& dir, const std::string& command,
                         const ExperimentConfig& cfg, const RunResult& run, bool force) {
  Manifest m = make_manifest(command, cfg);
  ensure_writable(dir, m, force);
  try {
    write_counters_csv(dir / "counters.csv", run);
    m.artifacts.push_back("counters.csv");
    if (cfg.sim.record_cwnd) {
      write_cwnd_csv(dir / "cwnd.csv", run);
      m.artifacts.push_back("cwnd.csv");
    }
    if (cfg.sim.record_trace) {
      write_trace_csv(dir / "trace.csv", run);
      m.artifacts.push_back("trace.csv");
    }
    m.complete = true;
  } catch (...) {
    m.complete = false;
    write_manifest(dir, m);
    throw;
  }
  write_manifest(dir, m);
}

int do_simulate(const Command& cmd) {
  ExperimentConfig cfg = resolve_config(cmd);
  cfg.sim.record_trace = cmd.with_trace;
  cfg.sim.record_cwnd = !cmd.no_cwnd;
  const RunResult run = run_experiment(cfg);
  write_run_artifacts(cmd.out_dir, "simulate", cfg, run, cmd.force);
  std::int64_t sent = 0, dropped = 0;
  for (const auto& c : run.counters) {
    sent += c.sent;
    dropped += c.dropped;
  }
  std::cout << "simulate: duty " << cfg.sim.duty << ", " << run.sample_count
            << " samples/flow, sent " << sent << ", dropped " << dropped << " -> "
            << cmd.out_dir << "\n";
  return 0;
}

int do_sweep(const Command& cmd) {
  ExperimentConfig base = resolve_config(cmd);
  base.sim.record_trace = false;
  base.sim.record_cwnd = !cmd.no_cwnd;
  const std::vector<double> grid = parse_grid(cmd.grid);
  const std::vector<SweepCell> cells =
      sweep_cells(grid, cmd.perturb_mode == "both", cmd.perturb_mode == "on");

  Manifest top = make_manifest("sweep", base);
  ensure_writable(cmd.out_dir, top, cmd.force);

  const fs::path out = cmd.out_dir;
  run_sweep(base, cells, [&](const SweepCell& cell, RunResult&& run) {
    ExperimentConfig cfg = base;
    cfg.sim.duty = cell.duty;
    cfg.sim.perturbation = cell.perturbation;
    const std::string name = cell_dir_name(cell);
    write_run_artifacts(out / name, "sweep-cell", cfg, run, cmd.force);
    top.artifacts.push_back(name);
    std::cout << "sweep: " << name << " done\n";
  }, cmd.workers);

  top.complete = true;
  write_manifest(out, top);
  return 0;
}

int do_bifurcation(const Command& cmd) {
  ExperimentConfig cfg = resolve_config(cmd);
  cfg.sim.perturbation = cmd.perturb.value_or(false);
  cfg.sim.record_trace = false;
  cfg.sim.record_transits = false;
  const std::vector<double> grid = parse_grid(cmd.grid);

  Manifest m = make_manifest("bifurcation", cfg);
  ensure_writable(cmd.out_dir, m, cmd.force);

  std::vector<BifurcationPoint> points;
  for (double d : grid) {
    ExperimentConfig c = cfg;
    c.sim.duty = d;
    const RunResult run = run_experiment(c);
    if (cmd.flow >= static_cast<int>(run.cwnd.size()))
      throw UsageError("flow index out of range for this topology");
    const double settle = c.analysis.settle_fraction * c.sim.duration_s;
    for (double p : settled_peaks(run.cwnd[static_cast<std::size_t>(cmd.flow)],
                                  run.sample_dt_s, settle))
      points.push_back(BifurcationPoint{d, cmd.flow, p});
    std::cout << "bifurcation: duty " << d << " done\n";
  }
  try {
    write_bifurcation_csv(fs::path(cmd.out_dir) / "bifurcation.csv", points);
    m.artifacts.push_back("bifurcation.csv");
    m.complete = true;
  } catch (...) {
    m.complete = false;
    write_manifest(cmd.out_dir, m);
    throw;
  }
  write_manifest(cmd.out_dir, m);
  return 0;
}

struct LoadedRun {
  ExperimentConfig cfg;
  RunResult run;
};

LoadedRun load_run(const fs::path& dir) {
  const auto m = read_manifest(dir);
  if (!m) throw MissingTrace("no manifest in " + dir.string());
  LoadedRun lr;
  lr.cfg = parse_config(m->config_text);
  lr.run.config = lr.cfg.sim;
  lr.run.sample_dt_s = lr.cfg.sim.sample_dt_s;
  lr.run.flows = LineTopology::crossing_flows(lr.cfg.sim.node_count);
  lr.run.perturbation_flow_id =
      lr.cfg.sim.perturbation ? static_cast<int>(lr.run.flows.size()) : -1;

  lr.run.counters.assign(lr.run.flows.size() + (lr.cfg.sim.perturbation ? 1 : 0), FlowCounters{});
  for (const CounterRow& row : read_counters_csv(dir / "counters.csv")) {
    if (row.flow >= 0 && row.flow < static_cast<int>(lr.run.counters.size()))
      lr.run.counters[static_cast<std::size_t>(row.flow)] = row.counters;
  }

  auto series = read_cwnd_csv(dir / "cwnd.csv");
  lr.run.cwnd.resize(lr.run.flows.size());
  for (const Flow& f : lr.run.flows) {
    auto it = series.find(f.id);
    if (it == series.end())
      throw MissingTrace("cwnd series missing for flow " + std::to_string(f.id));
    lr.run.cwnd[static_cast<std::size_t>(f.id)] = std::move(it->second);
  }
  lr.run.sample_count = lr.run.cwnd.empty() ? 0 : lr.run.cwnd.front().size();
  return lr;
}

std::vector<bool> window_flags(Eigen::Index w, double window_s,
                               const std::vector<std::pair<Micros, Micros>>& bursts) {
  const Micros wus = micros_from_seconds(window_s);
  auto overlaps = [&](Eigen::Index i) {
    const Micros lo = static_cast<Micros>(i) * wus;
    const Micros hi = lo + wus;
    for (const auto& b : bursts)
      if (lo < b.second && b.first < hi) return true;
    return false;
  };
  std::vector<bool> flags(static_cast<std::size_t>(w), false);
  for (Eigen::Index i = 0; i < w; ++i)
    flags[static_cast<std::size_t>(i)] = overlaps(i) || (i > 0 && overlaps(i - 1));
  return flags;
}

int do_pca(const Command& cmd, bool with_graph) {
  const LoadedRun lr = load_run(cmd.run_dir);
  if (cmd.flow >= static_cast<int>(lr.run.cwnd.size()))
    throw UsageError("flow index out of range for this run");
  const fs::path out = cmd.out_dir.empty() ? fs::path(cmd.run_dir) : fs::path(cmd.out_dir);

  const WindowMatrix wm =
      window_matrix(std::span<const float>(lr.run.cwnd[static_cast<std::size_t>(cmd.flow)]),
                    lr.run.sample_dt_s, lr.cfg.analysis.window_s);
  const PcaModel model = pca_project(wm, 2);
  std::vector<std::pair<Micros, Micros>> bursts;
  if (lr.cfg.sim.perturbation)
    bursts = perturbation_window_list(lr.cfg.sim.duration_s, lr.cfg.sim.perturb_interval_s,
                                      lr.cfg.sim.perturb_burst_s);
  const std::vector<bool> flags = window_flags(model.projections.rows(),
                                               lr.cfg.analysis.window_s, bursts);

  if (!with_graph) {
    const std::string name = "pca_flow" + std::to_string(cmd.flow) + ".csv";
    write_pca_csv(out / name, model, flags);
    std::cout << "pca: " << (out / name).string() << "\n";
    return 0;
  }

  const QuantizationSpec q = fit_quantization(model.projections, lr.cfg.analysis.grid_bins);
  const StateGraph g =
      build_transition_graph(model.projections, q, bursts, lr.cfg.analysis.window_s);
  const std::string base = "state_graph_flow" + std::to_string(cmd.flow);
  atomic_write_text(out / (base + ".dot"), graph_to_dot(g));
  atomic_write_text(out / (base + ".json"), graph_to_json(g));
  std::cout << "transitions: " << g.nodes.size() << " states, "
            << (out / (base + ".dot")).string() << "\n";
  return 0;
}

// Cells of a sweep directory in manifest order.
std::vector<std::pair<std::string, fs::path>> sweep_cell_dirs(const fs::path& dir,
                                                              const Manifest& m) {
  std::vector<std::pair<std::string, fs::path>> cells;
  for (const std::string& name : m.artifacts) cells.emplace_back(name, dir / name);
  return cells;
}

int do_stats(const Command& cmd) {
  const fs::path in = cmd.run_dir;
  const fs::path out = cmd.out_dir.empty() ? in : fs::path(cmd.out_dir);
  const auto m = read_manifest(in);
  if (!m) throw MissingTrace("no manifest in " + in.string());

  if (m->command != "sweep") {
    const LoadedRun lr = load_run(in);
    const std::vector<FlowStats> stats =
        run_stats(lr.run, lr.cfg.analysis, cmd.with_lyapunov);
    write_stats_csv(out / "stats.csv", stats);
    std::cout << "stats: " << (out / "stats.csv").string() << "\n";
    return 0;
  }

  std::vector<FlowStats> with_pert, without_pert;
  for (const auto& [name, dir] : sweep_cell_dirs(in, *m)) {
    const LoadedRun lr = load_run(dir);
    auto stats = run_stats(lr.run, lr.cfg.analysis, cmd.with_lyapunov);
    auto& bucket = lr.cfg.sim.perturbation ? with_pert : without_pert;
    bucket.insert(bucket.end(), stats.begin(), stats.end());
    std::cout << "stats: " << name << " done\n";
  }
  if (!with_pert.empty()) write_stats_csv(out / "stats_with_perturbation.csv", with_pert);
  if (!without_pert.empty()) write_stats_csv(out / "stats_without_perturbation.csv", without_pert);
  return 0;
}

int do_report(const Command& cmd) {
  const fs::path in = cmd.run_dir;
  const fs::path out = cmd.out_dir.empty() ? in / "report" : fs::path(cmd.out_dir);
  const auto top = read_manifest(in);
  if (!top) throw MissingTrace("no manifest in " + in.string());
  if (top->command != "sweep")
    throw UsageError("report expects a sweep directory (made by `psn sweep`)");

  Manifest rm;
  rm.command = "report";
  rm.config_hash = top->config_hash;
  rm.seed = top->seed;
  rm.config_text = top->config_text;
  ensure_writable(out, rm, cmd.force);

  std::vector<std::string> problems;

  // Per-cell stats, bucketed by arm.
  std::map<double, std::map<int, FlowStats>> stats_with, stats_without;
  std::map<double, fs::path> cells_with, cells_without;
  AnalysisParams ap;
  for (const auto& [name, dir] : sweep_cell_dirs(in, *top)) {
    try {
      const LoadedRun lr = load_run(dir);
      ap = lr.cfg.analysis;
      auto stats = run_stats(lr.run, lr.cfg.analysis, cmd.with_lyapunov);
      auto& bucket = lr.cfg.sim.perturbation ? stats_with : stats_without;
      auto& dirs = lr.cfg.sim.perturbation ? cells_with : cells_without;
      dirs[lr.cfg.sim.duty] = dir;
      for (const FlowStats& s : stats) bucket[s.duty][s.flow] = s;
      std::cout << "report: analyzed " << name << "\n";
    } catch (const SimError& e) {
      problems.push_back(name + ": " + e.what());
    }
  }
  if (stats_with.empty() && stats_without.empty())
    throw MissingTrace("no analyzable cells under " + in.string());

  auto flatten = [](const std::map<double, std::map<int, FlowStats>>& bucket) {
    std::vector<FlowStats> v;
    for (const auto& [duty, per_flow] : bucket)
      for (const auto& [flow, s] : per_flow) v.push_back(s);
    return v;
  };
  if (!stats_with.empty()) {
    write_stats_csv(out / "stats_with_perturbation.csv", flatten(stats_with));
    rm.artifacts.push_back("stats_with_perturbation.csv");
  }
  if (!stats_without.empty()) {
    write_stats_csv(out / "stats_without_perturbation.csv", flatten(stats_without));
    rm.artifacts.push_back("stats_without_perturbation.csv");
  }

  // States-vs-drops and states-vs-dimensionality correlations per flow,
  // preferring the perturbed arm (the probing protocol the comparisons
  // were defined for).
  const auto& corr_bucket = !stats_with.empty() ? stats_with : stats_without;
  std::map<int, std::vector<double>> states_by_flow, drops_by_flow, dims_by_flow;
  for (const auto& [duty, per_flow] : corr_bucket) {
    for (const auto& [flow, s] : per_flow) {
      states_by_flow[flow].push_back(static_cast<double>(s.n_states));
      drops_by_flow[flow].push_back(static_cast<double>(s.dropped));
      dims_by_flow[flow].push_back(static_cast<double>(s.n_dims_99));
    }
  }
  atomic_write(out / "correlations.csv", [&](std::ostream& os) {
    os << "flow,r_states_drops,r_states_dims\n";
    for (const auto& [flow, states] : states_by_flow) {
      auto corr_or_nan = [&](const std::vector<double>& other) -> std::string {
        try {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.9g", pearson(states, other));
          return buf;
        } catch (const SimError&) {
          return "nan";
        }
      };
      os << flow << "," << corr_or_nan(drops_by_flow[flow]) << ","
         << corr_or_nan(dims_by_flow[flow]) << "\n";
    }
  });
  rm.artifacts.push_back("correlations.csv");

  // Throughput against duty, both arms side by side.
  atomic_write(out / "throughput_vs_duty.csv", [&](std::ostream& os) {
    os << "duty,flow,throughput_with_perturbation,throughput_without_perturbation\n";
    std::map<double, std::map<int, std::pair<double, double>>> table;
    for (const auto& [duty, per_flow] : stats_with)
      for (const auto& [flow, s] : per_flow)
        table[duty][flow] = {s.throughput, std::nan("")};
    for (const auto& [duty, per_flow] : stats_without)
      for (const auto& [flow, s] : per_flow) {
        auto it = table[duty].find(flow);
        if (it == table[duty].end())
          table[duty][flow] = {std::nan(""), s.throughput};
        else
          it->second.second = s.throughput;
      }
    char buf[96];
    for (const auto& [duty, per_flow] : table)
      for (const auto& [flow, tp] : per_flow) {
        std::snprintf(buf, sizeof buf, "%.9g,%d,%.9g,%.9g\n", duty, flow, tp.first, tp.second);
        os << buf;
      }
  });
  rm.artifacts.push_back("throughput_vs_duty.csv");

  // Transit-time profile over flows at the lowest duty: the per-flow medians.
  const auto& transit_cells = !cells_without.empty() ? cells_without : cells_with;
  if (!transit_cells.empty()) {
    try {
      const auto rows = read_counters_csv(transit_cells.begin()->second / "counters.csv");
      atomic_write(out / "transit_profile.csv", [&](std::ostream& os) {
        os << "flow,median_transit_s\n";
        char buf[64];
        for (const auto& r : rows) {
          std::snprintf(buf, sizeof buf, "%d,%.9g\n", r.flow, r.median_transit_s);
          os << buf;
        }
      });
      rm.artifacts.push_back("transit_profile.csv");
    } catch (const SimError& e) {
      problems.push_back(std::string("transit_profile: ") + e.what());
    }
  }

  // Peak scatter for the chosen flow across the duty grid (unperturbed arm
  // when available).
  const auto& peak_cells = !cells_without.empty() ? cells_without : cells_with;
  try {
    std::vector<BifurcationPoint> points;
    for (const auto& [duty, dir] : peak_cells) {
      const LoadedRun lr = load_run(dir);
      if (cmd.flow >= static_cast<int>(lr.run.cwnd.size()))
        throw UsageError("flow index out of range for this sweep");
      const double settle = lr.cfg.analysis.settle_fraction * lr.cfg.sim.duration_s;
      for (double p : settled_peaks(lr.run.cwnd[static_cast<std::size_t>(cmd.flow)],
                                    lr.run.sample_dt_s, settle))
        points.push_back(BifurcationPoint{duty, cmd.flow, p});
    }
    write_bifurcation_csv(out / "bifurcation.csv", points);
    rm.artifacts.push_back("bifurcation.csv");
  } catch (const SimError& e) {
    problems.push_back(std::string("bifurcation: ") + e.what());
  }

  // Projection cloud and state graph for the chosen flow at the highest
  // duty of the perturbed arm.
  const auto& proj_cells = !cells_with.empty() ? cells_with : cells_without;
  if (!proj_cells.empty()) {
    try {
      const fs::path dir = proj_cells.rbegin()->second;
      const LoadedRun lr = load_run(dir);
      const WindowMatrix wm = window_matrix(
          std::span<const float>(lr.run.cwnd.at(static_cast<std::size_t>(cmd.flow))),
          lr.run.sample_dt_s, lr.cfg.analysis.window_s);
      const PcaModel model = pca_project(wm, 2);
      std::vector<std::pair<Micros, Micros>> bursts;
      if (lr.cfg.sim.perturbation)
        bursts = perturbation_window_list(lr.cfg.sim.duration_s, lr.cfg.sim.perturb_interval_s,
                                          lr.cfg.sim.perturb_burst_s);
      const std::vector<bool> flags =
          window_flags(model.projections.rows(), lr.cfg.analysis.window_s, bursts);
      const std::string pca_name = "pca_flow" + std::to_string(cmd.flow) + ".csv";
      write_pca_csv(out / pca_name, model, flags);
      rm.artifacts.push_back(pca_name);

      const QuantizationSpec q = fit_quantization(model.projections, lr.cfg.analysis.grid_bins);
      const StateGraph g =
          build_transition_graph(model.projections, q, bursts, lr.cfg.analysis.window_s);
      const std::string base = "state_graph_flow" + std::to_string(cmd.flow);
      atomic_write_text(out / (base + ".dot"), graph_to_dot(g));
      atomic_write_text(out / (base + ".json"), graph_to_json(g));
      rm.artifacts.push_back(base + ".dot");
      rm.artifacts.push_back(base + ".json");
    } catch (const SimError& e) {
      problems.push_back(std::string("projections: ") + e.what());
    }
  }

  // Human-readable digest.
  atomic_write(out / "summary.txt", [&](std::ostream& os) {
    os << "duty sweep summary\n==================\n\n";
    auto arm_summary = [&](const char* label,
                           const std::map<double, std::map<int, FlowStats>>& bucket) {
      if (bucket.empty()) return;
      os << label << "\n";
      os << "  duty   min_tput  mean_tput  mean_states  mean_dims\n";
      for (const auto& [duty, per_flow] : bucket) {
        double min_tp = 1.0, sum_tp = 0.0, sum_states = 0.0, sum_dims = 0.0;
        for (const auto& [flow, s] : per_flow) {
          min_tp = std::min(min_tp, s.throughput);
          sum_tp += s.throughput;
          sum_states += s.n_states;
          sum_dims += s.n_dims_99;
        }
        const double n = static_cast<double>(per_flow.size());
        char buf[128];
        std::snprintf(buf, sizeof buf, "  %.3f  %8.4f  %9.4f  %11.1f  %9.2f\n", duty,
                      min_tp, sum_tp / n, sum_states / n, sum_dims / n);
        os << buf;
      }
      os << "\n";
    };
    arm_summary("with perturbation", stats_with);
    arm_summary("without perturbation", stats_without);
    if (!problems.empty()) {
      os << "incomplete parts:\n";
      for (const auto& p : problems) os << "  - " << p << "\n";
    }
  });
  rm.artifacts.push_back("summary.txt");

  rm.complete = problems.empty();
  write_manifest(out, rm);
  for (const auto& p : problems) std::cerr << "report: skipped " << p << "\n";
  std::cout << "report: " << out.string() << (rm.complete ? "" : " (partial)") << "\n";
  return rm.complete ? 0 : 1;
}

}  // namespace

int execute(const Command& cmd) {
  if (cmd.name == "simulate") return do_simulate(cmd);
  if (cmd.name == "sweep") return do_sweep(cmd);
  if (cmd.name == "bifurcation") return do_bifurcation(cmd);
  if (cmd.name == "pca") return do_pca(cmd, false);
  if (cmd.name == "transitions") return do_pca(cmd, true);
  if (cmd.name == "stats") return do_stats(cmd);
  if (cmd.name == "report") return do_report(cmd);
  throw UsageError("unknown command: " + cmd.name);
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const Command cmd = parse_args(args);
    if (cmd.name == "help") {
      std::cout << cmd.help_text;
      return 0;
    }
    return execute(cmd);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace psn
