#include "psn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psn/analysis/series.hpp"
#include "psn/errors.hpp"

namespace psn {

namespace fs = std::filesystem;

void atomic_write(const fs::path& path, const std::function<void(std::ostream&)>& fill) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SimError("cannot open for writing: " + tmp.string());
    fill(out);
    out.flush();
    if (!out) throw SimError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void atomic_write_text(const fs::path& path, const std::string& text) {
  atomic_write(path, [&](std::ostream& out) { out << text; });
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_cwnd_csv(const fs::path& path, const RunResult& run) {
  atomic_write(path, [&](std::ostream& out) {
    out << "time_s,flow,cwnd\n";
    char line[96];
    for (std::size_t f = 0; f < run.cwnd.size(); ++f) {
      const int flow = run.flows[f].id;
      for (std::size_t i = 0; i < run.cwnd[f].size(); ++i) {
        const double t = static_cast<double>(i) * run.sample_dt_s;
        std::snprintf(line, sizeof line, "%.6f,%d,%.9g\n", t, flow,
                      static_cast<double>(run.cwnd[f][i]));
        out << line;
      }
    }
  });
}

void write_trace_csv(const fs::path& path, const RunResult& run) {
  atomic_write(path, [&](std::ostream& out) {
    out << "time_s,event,flow,node,seq\n";
    char line[96];
    for (const TraceRow& r : run.trace) {
      std::snprintf(line, sizeof line, "%.6f,%s,%d,%d,%lld\n", r.at.seconds(),
                    trace_event_name(r.event), r.flow, r.node,
                    static_cast<long long>(r.seq));
      out << line;
    }
  });
}

void write_counters_csv(const fs::path& path, const RunResult& run) {
  atomic_write(path, [&](std::ostream& out) {
    out << "flow,sent,delivered,dropped,retransmits,throughput,median_transit_s\n";
    for (std::size_t f = 0; f < run.counters.size(); ++f) {
      const FlowCounters& c = run.counters[f];
      const int flow = f < run.flows.size() ? run.flows[f].id : run.perturbation_flow_id;
      double med = std::nan("");
      if (f < run.transits_s.size() && !run.transits_s[f].empty()) {
        std::vector<double> t(run.transits_s[f].begin(), run.transits_s[f].end());
        med = median(std::move(t));
      }
      out << flow << "," << c.sent << "," << c.delivered << "," << c.dropped << ","
          << c.retransmits << "," << fmt(throughput(c.sent, c.dropped)) << ","
          << fmt(med) << "\n";
    }
  });
}

void write_stats_csv(const fs::path& path, const std::vector<FlowStats>& stats) {
  atomic_write(path, [&](std::ostream& out) {
    out << "flow,duty,sent,dropped,throughput,n_states,n_dims_99,lyapunov\n";
    for (const FlowStats& s : stats) {
      out << s.flow << "," << fmt(s.duty) << "," << s.sent << "," << s.dropped << ","
          << fmt(s.throughput) << "," << s.n_states << "," << s.n_dims_99 << ","
          << (s.lyapunov_valid ? fmt(s.lyapunov) : std::string("nan")) << "\n";
    }
  });
}

void write_bifurcation_csv(const fs::path& path, const std::vector<BifurcationPoint>& points) {
  atomic_write(path, [&](std::ostream& out) {
    out << "duty,flow,peak_value\n";
    for (const BifurcationPoint& p : points)
      out << fmt(p.duty) << "," << p.flow << "," << fmt(p.peak) << "\n";
  });
}

void write_pca_csv(const fs::path& path, const PcaModel& model,
                   const std::vector<bool>& perturbed_flags) {
  atomic_write(path, [&](std::ostream& out) {
    out << "window_index,pc1,pc2,perturbed_flag\n";
    const Eigen::Index w = model.projections.rows();
    for (Eigen::Index i = 0; i < w; ++i) {
      const double pc1 = model.projections.cols() > 0 ? model.projections(i, 0) : 0.0;
      const double pc2 = model.projections.cols() > 1 ? model.projections(i, 1) : 0.0;
      const bool flag =
          static_cast<std::size_t>(i) < perturbed_flags.size() && perturbed_flags[static_cast<std::size_t>(i)];
      out << i << "," << fmt(pc1) << "," << fmt(pc2) << "," << (flag ? 1 : 0) << "\n";
    }
  });
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::map<int, std::vector<float>> read_cwnd_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingTrace("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw MissingTrace("empty cwnd file " + path.string());
  std::map<int, std::vector<float>> series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 3) throw MissingTrace("malformed cwnd row: " + line);
    series[std::stoi(cols[1])].push_back(std::stof(cols[2]));
  }
  return series;
}

std::vector<CounterRow> read_counters_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingTrace("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw MissingTrace("empty counters file " + path.string());
  std::vector<CounterRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 7) throw MissingTrace("malformed counters row: " + line);
    CounterRow r;
    r.flow = std::stoi(cols[0]);
    r.counters.sent = std::stoll(cols[1]);
    r.counters.delivered = std::stoll(cols[2]);
    r.counters.dropped = std::stoll(cols[3]);
    r.counters.retransmits = std::stoll(cols[4]);
    r.median_transit_s = std::stod(cols[6]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace psn
