#include "psn/config.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psn/errors.hpp"

namespace psn {

ExperimentConfig desk_profile() {
  ExperimentConfig c;
  c.sim.duration_s = 1000.0;
  c.sim.perturbation = true;
  return c;
}

ExperimentConfig paper_profile() {
  ExperimentConfig c;
  c.sim.duration_s = 10'000.0;
  c.sim.perturbation = true;
  return c;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidConfig("bad numeric value for " + key + ": '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw InvalidConfig("bad integer value for " + key + ": '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidConfig("bad boolean value for " + key + ": '" + v + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.resize(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InvalidConfig("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string qual = section + "." + key;

    if (qual == "experiment.duty") c.sim.duty = parse_double(qual, value);
    else if (qual == "experiment.duration_s") c.sim.duration_s = parse_double(qual, value);
    else if (qual == "experiment.sample_dt_s") c.sim.sample_dt_s = parse_double(qual, value);
    else if (qual == "experiment.seed") c.sim.seed = static_cast<std::uint64_t>(parse_int(qual, value));
    else if (qual == "topology.nodes") c.sim.node_count = static_cast<int>(parse_int(qual, value));
    else if (qual == "link.bandwidth_bps") c.sim.link.bandwidth_bps = parse_int(qual, value);
    else if (qual == "link.propagation_delay_s") c.sim.link.propagation_delay_s = parse_double(qual, value);
    else if (qual == "link.queue_capacity") c.sim.link.queue_capacity = static_cast<std::size_t>(parse_int(qual, value));
    else if (qual == "link.data_bytes") c.sim.data_bytes = static_cast<int>(parse_int(qual, value));
    else if (qual == "link.ack_bytes") c.sim.ack_bytes = static_cast<int>(parse_int(qual, value));
    else if (qual == "tcp.initial_cwnd") c.sim.tcp.initial_cwnd = parse_double(qual, value);
    else if (qual == "tcp.initial_ssthresh") c.sim.tcp.initial_ssthresh = parse_double(qual, value);
    else if (qual == "tcp.max_cwnd") c.sim.tcp.max_cwnd = parse_double(qual, value);
    else if (qual == "tcp.rto_min_s") c.sim.tcp.rto_min_s = parse_double(qual, value);
    else if (qual == "tcp.rto_initial_s") c.sim.tcp.rto_initial_s = parse_double(qual, value);
    else if (qual == "tcp.rto_max_s") c.sim.tcp.rto_max_s = parse_double(qual, value);
    else if (qual == "tcp.restart_cwnd") c.sim.tcp.restart_cwnd = parse_double(qual, value);
    else if (qual == "tcp.dupack_threshold") c.sim.tcp.dupack_threshold = static_cast<int>(parse_int(qual, value));
    else if (qual == "duty.period_s") c.sim.duty_period_s = parse_double(qual, value);
    else if (qual == "duty.phase_s") c.sim.duty_phase_s = parse_double(qual, value);
    else if (qual == "perturbation.enabled") c.sim.perturbation = parse_bool(qual, value);
    else if (qual == "perturbation.interval_s") c.sim.perturb_interval_s = parse_double(qual, value);
    else if (qual == "perturbation.burst_s") c.sim.perturb_burst_s = parse_double(qual, value);
    else if (qual == "analysis.window_s") c.analysis.window_s = parse_double(qual, value);
    else if (qual == "analysis.grid_bins") c.analysis.grid_bins = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.settle_fraction") c.analysis.settle_fraction = parse_double(qual, value);
    else if (qual == "analysis.contribution") c.analysis.contribution = parse_double(qual, value);
    else if (qual == "analysis.embed_dim") c.analysis.embed_dim = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.embed_delay") c.analysis.embed_delay = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.theiler") c.analysis.theiler = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.fit_begin") c.analysis.fit_begin = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.fit_count") c.analysis.fit_count = static_cast<int>(parse_int(qual, value));
    else if (qual == "analysis.max_refs") c.analysis.max_refs = static_cast<int>(parse_int(qual, value));
    else throw InvalidConfig("line " + std::to_string(line_no) + ": unknown key '" + qual + "'");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[experiment]\n";
  out << "duty = " << format_double(c.sim.duty) << "\n";
  out << "duration_s = " << format_double(c.sim.duration_s) << "\n";
  out << "sample_dt_s = " << format_double(c.sim.sample_dt_s) << "\n";
  out << "seed = " << c.sim.seed << "\n";
  out << "\n[topology]\n";
  out << "nodes = " << c.sim.node_count << "\n";
  out << "\n[link]\n";
  out << "bandwidth_bps = " << c.sim.link.bandwidth_bps << "\n";
  out << "propagation_delay_s = " << format_double(c.sim.link.propagation_delay_s) << "\n";
  out << "queue_capacity = " << c.sim.link.queue_capacity << "\n";
  out << "data_bytes = " << c.sim.data_bytes << "\n";
  out << "ack_bytes = " << c.sim.ack_bytes << "\n";
  out << "\n[tcp]\n";
  out << "initial_cwnd = " << format_double(c.sim.tcp.initial_cwnd) << "\n";
  out << "initial_ssthresh = " << format_double(c.sim.tcp.initial_ssthresh) << "\n";
  out << "max_cwnd = " << format_double(c.sim.tcp.max_cwnd) << "\n";
  out << "rto_min_s = " << format_double(c.sim.tcp.rto_min_s) << "\n";
  out << "rto_initial_s = " << format_double(c.sim.tcp.rto_initial_s) << "\n";
  out << "rto_max_s = " << format_double(c.sim.tcp.rto_max_s) << "\n";
  out << "restart_cwnd = " << format_double(c.sim.tcp.restart_cwnd) << "\n";
  out << "dupack_threshold = " << c.sim.tcp.dupack_threshold << "\n";
  out << "\n[duty]\n";
  out << "period_s = " << format_double(c.sim.duty_period_s) << "\n";
  out << "phase_s = " << format_double(c.sim.duty_phase_s) << "\n";
  out << "\n[perturbation]\n";
  out << "enabled = " << (c.sim.perturbation ? "true" : "false") << "\n";
  out << "interval_s = " << format_double(c.sim.perturb_interval_s) << "\n";
  out << "burst_s = " << format_double(c.sim.perturb_burst_s) << "\n";
  out << "\n[analysis]\n";
  out << "window_s = " << format_double(c.analysis.window_s) << "\n";
  out << "grid_bins = " << c.analysis.grid_bins << "\n";
  out << "settle_fraction = " << format_double(c.analysis.settle_fraction) << "\n";
  out << "contribution = " << format_double(c.analysis.contribution) << "\n";
  out << "embed_dim = " << c.analysis.embed_dim << "\n";
  out << "embed_delay = " << c.analysis.embed_delay << "\n";
  out << "theiler = " << c.analysis.theiler << "\n";
  out << "fit_begin = " << c.analysis.fit_begin << "\n";
  out << "fit_count = " << c.analysis.fit_count << "\n";
  out << "max_refs = " << c.analysis.max_refs << "\n";
  return out.str();
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  const std::string text = serialize_config(c);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace psn
