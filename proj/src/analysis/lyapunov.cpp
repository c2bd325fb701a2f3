#include "psn/analysis/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "psn/errors.hpp"

namespace psn {

double largest_lyapunov(std::span<const double> series, double dt_s, const EmbeddingSpec& e) {
  if (e.dim < 1 || e.delay < 1 || e.theiler < 0 || e.fit_begin < 0 || e.fit_count < 2 ||
      e.max_refs < 1 || dt_s <= 0.0)
    throw InvalidConfig("embedding parameters out of range");

  const std::int64_t n = static_cast<std::int64_t>(series.size());
  const std::int64_t span = static_cast<std::int64_t>(e.dim - 1) * e.delay;
  const std::int64_t m = n - span;  // number of embedded points
  const std::int64_t k_max = e.fit_begin + e.fit_count - 1;
  if (m < 2 * (e.theiler + 1) || m <= k_max)
    throw SeriesTooShort("series too short for the chosen embedding");

  auto dist2 = [&](std::int64_t i, std::int64_t j) {
    double s = 0.0;
    for (int d = 0; d < e.dim; ++d) {
      const double diff = series[static_cast<std::size_t>(i + static_cast<std::int64_t>(d) * e.delay)] -
                          series[static_cast<std::size_t>(j + static_cast<std::int64_t>(d) * e.delay)];
      s += diff * diff;
    }
    return s;
  };

  const std::int64_t usable = m - k_max;  // both trajectories must have k_max steps of room
  if (usable < 2) throw SeriesTooShort("series too short for the chosen fit range");
  const std::int64_t stride = usable > e.max_refs ? usable / e.max_refs : 1;

  std::vector<double> log_sum(static_cast<std::size_t>(k_max) + 1, 0.0);
  std::vector<std::int64_t> log_cnt(static_cast<std::size_t>(k_max) + 1, 0);
  std::int64_t refs_used = 0;

  for (std::int64_t i = 0; i < usable; i += stride) {
    // Nearest strictly-positive-distance neighbor outside the Theiler window.
    std::int64_t best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::int64_t j = 0; j < usable; ++j) {
      if (std::llabs(i - j) <= e.theiler) continue;
      const double d2 = dist2(i, j);
      if (d2 > 0.0 && d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    if (best < 0) continue;
    ++refs_used;
    for (std::int64_t k = 0; k <= k_max; ++k) {
      const double d2 = dist2(i + k, best + k);
      if (d2 > 0.0) {
        log_sum[static_cast<std::size_t>(k)] += 0.5 * std::log(d2);
        ++log_cnt[static_cast<std::size_t>(k)];
      }
    }
  }
  if (refs_used == 0) throw NoValidNeighbors("no neighbor with positive distance found");

  // Least-squares slope of <ln d(k)> against k*dt over the fit range.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::int64_t pts = 0;
  for (std::int64_t k = e.fit_begin; k <= k_max; ++k) {
    if (log_cnt[static_cast<std::size_t>(k)] == 0) continue;
    const double x = static_cast<double>(k) * dt_s;
    const double y = log_sum[static_cast<std::size_t>(k)] / static_cast<double>(log_cnt[static_cast<std::size_t>(k)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  if (pts < 2) throw NoValidNeighbors("not enough divergence points for a fit");
  const double denom = static_cast<double>(pts) * sxx - sx * sx;
  if (denom == 0.0) throw NoValidNeighbors("degenerate fit range");
  return (static_cast<double>(pts) * sxy - sx * sy) / denom;
}

}  // namespace psn
