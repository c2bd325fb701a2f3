#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>

#include "psn/config.hpp"
#include "psn/errors.hpp"

using namespace psn;

namespace {

// Independent FNV-1a 64 over a string, for checking the config hash.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

TEST_CASE("profiles differ only in length") {
  const ExperimentConfig desk = desk_profile();
  const ExperimentConfig paper = paper_profile();
  CHECK(desk.sim.duration_s == 1000.0);
  CHECK(paper.sim.duration_s == 10'000.0);
  CHECK(desk.sim.node_count == 30);
  CHECK(paper.sim.node_count == 30);
  CHECK(desk.sim.sample_dt_s == 0.01);
  CHECK(desk.sim.perturbation);
  CHECK(paper.sim.perturbation);
  CHECK(paper.analysis.window_s == 10.0);
}

TEST_CASE("serialize and parse round-trip exactly") {
  ExperimentConfig c = paper_profile();
  c.sim.duty = 0.37;
  c.sim.seed = 987654321;
  c.sim.link.bandwidth_bps = 2'000'000;
  c.sim.tcp.initial_ssthresh = 48;
  c.analysis.grid_bins = 64;
  c.sim.duty_phase_s = 0.125;

  const std::string text = serialize_config(c);
  const ExperimentConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.sim.duty == 0.37);
  CHECK(back.sim.seed == 987654321);
  CHECK(back.sim.link.bandwidth_bps == 2'000'000);
  CHECK(back.sim.tcp.initial_ssthresh == 48.0);
  CHECK(back.analysis.grid_bins == 64);
  CHECK(back.sim.duty_phase_s == 0.125);
}

TEST_CASE("serialization is canonical: equal configs give equal bytes") {
  CHECK(serialize_config(desk_profile()) == serialize_config(desk_profile()));
  CHECK(serialize_config(desk_profile()) != serialize_config(paper_profile()));
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
  const std::string text =
      "# leading comment\n"
      "\n"
      "[experiment]\n"
      "  duty = 0.25   ; trailing comment\n"
      "duration_s=42\n"
      "\n"
      "[perturbation]\n"
      "enabled = off\n";
  const ExperimentConfig c = parse_config(text);
  CHECK(c.sim.duty == 0.25);
  CHECK(c.sim.duration_s == 42.0);
  CHECK(!c.sim.perturbation);
}

TEST_CASE("unknown keys are rejected with their line number") {
  const std::string text = "[experiment]\nduty = 0.5\nduti = 0.4\n";
  try {
    parse_config(text);
    FAIL("expected a parse failure");
  } catch (const InvalidConfig& e) {
    const std::string msg = e.what();
    CHECK(msg.find("3") != std::string::npos);
    CHECK(msg.find("duti") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("[nosuchsection]\nx = 1\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("[experiment]\nduty 0.5\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("[experiment\nduty = 0.5\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("[experiment]\nduty = abc\n"), InvalidConfig);
  CHECK_THROWS_AS(parse_config("[perturbation]\nenabled = maybe\n"), InvalidConfig);
}

TEST_CASE("config hash is FNV-1a of the canonical text") {
  ExperimentConfig c = desk_profile();
  CHECK(config_hash(c) == fnv1a(serialize_config(c)));

  ExperimentConfig d = c;
  d.sim.duty = c.sim.duty + 0.1;
  CHECK(config_hash(d) != config_hash(c));
  CHECK(config_hash(c) == config_hash(desk_profile()));
}

TEST_CASE("load_config reads a file and propagates errors") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "psn_cfg_test";
  fs::create_directories(dir);
  const fs::path path = dir / "t.cfg";

  ExperimentConfig c = desk_profile();
  c.sim.duty = 0.66;
  {
    std::ofstream out(path);
    out << serialize_config(c);
  }
  const ExperimentConfig back = load_config(path.string());
  CHECK(back.sim.duty == 0.66);
  CHECK(serialize_config(back) == serialize_config(c));

  CHECK_THROWS_AS(load_config((dir / "missing.cfg").string()), InvalidConfig);
  fs::remove_all(dir);
}
