#include "psn/scenario.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>

#include "psn/errors.hpp"

namespace psn {

RunResult run_experiment(const ExperimentConfig& cfg) {
  Simulator sim(cfg.sim);
  return sim.run();
}

std::vector<SweepCell> sweep_cells(const std::vector<double>& duty_grid, bool both_arms,
                                   bool perturbation_when_single) {
  if (duty_grid.empty()) throw InvalidConfig("duty grid is empty");
  std::vector<SweepCell> cells;
  for (double d : duty_grid) {
    if (d < 0.0 || d > 1.0) throw InvalidConfig("duty ratio outside [0,1] in grid");
    if (both_arms) {
      cells.push_back(SweepCell{d, true});
      cells.push_back(SweepCell{d, false});
    } else {
      cells.push_back(SweepCell{d, perturbation_when_single});
    }
  }
  return cells;
}

namespace {

int worker_count(int requested, std::size_t cells) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("PSN_WORKERS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), cells));
}

}  // namespace

void run_sweep(const ExperimentConfig& base, const std::vector<SweepCell>& cells,
               const std::function<void(const SweepCell&, RunResult&&)>& sink,
               int workers) {
  if (cells.empty()) return;
  const int n_workers = worker_count(workers, cells.size());

  if (n_workers <= 1) {
    for (const SweepCell& cell : cells) {
      ExperimentConfig cfg = base;
      cfg.sim.duty = cell.duty;
      cfg.sim.perturbation = cell.perturbation;
      sink(cell, run_experiment(cfg));
    }
    return;
  }

  // Cells run on a small pool; the sink still sees them in cell order.
  std::vector<std::optional<RunResult>> slots(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      ExperimentConfig cfg = base;
      cfg.sim.duty = cells[i].duty;
      cfg.sim.perturbation = cells[i].perturbation;
      std::optional<RunResult> r;
      std::exception_ptr err;
      try {
        r = run_experiment(cfg);
      } catch (...) {
        err = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(r);
        errors[i] = err;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(work);

  std::exception_ptr first_error;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return slots[i].has_value() || errors[i]; });
    if (errors[i] && !first_error) first_error = errors[i];
    std::optional<RunResult> r = std::move(slots[i]);
    slots[i].reset();
    lock.unlock();
    if (r && !first_error) sink(cells[i], std::move(*r));
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> parse_grid(const std::string& spec) {
  double a = 0.0, b = 0.0, step = 0.0;
  const std::size_t c1 = spec.find(':');
  const std::size_t c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
  try {
    if (c2 == std::string::npos) {
      if (c1 == std::string::npos) {
        std::size_t pos = 0;
        a = std::stod(spec, &pos);
        if (pos != spec.size()) throw std::invalid_argument(spec);
        return {a};
      }
      throw std::invalid_argument(spec);
    }
    std::size_t p = 0;
    const std::string sa = spec.substr(0, c1);
    const std::string sb = spec.substr(c1 + 1, c2 - c1 - 1);
    const std::string sc = spec.substr(c2 + 1);
    a = std::stod(sa, &p);
    if (p != sa.size()) throw std::invalid_argument(spec);
    b = std::stod(sb, &p);
    if (p != sb.size()) throw std::invalid_argument(spec);
    step = std::stod(sc, &p);
    if (p != sc.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw UsageError("bad grid '" + spec + "', expected a:b:step");
  }
  if (step <= 0.0 || b < a) throw UsageError("bad grid '" + spec + "', expected a <= b and step > 0");
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double v = a + step * i;
    if (v > b + step * 1e-9) break;
    grid.push_back(std::min(v, b));
  }
  return grid;
}

}  // namespace psn
