#include "psn/analysis/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "psn/errors.hpp"
#include "psn/sim_time.hpp"

namespace psn {

double throughput(std::int64_t sent, std::int64_t drops) {
  if (drops < 0 || sent < 0 || drops > sent)
    throw InvalidCounts("drop count exceeds sent count");
  if (sent == 0) return 1.0;
  return static_cast<double>(sent - drops) / static_cast<double>(sent);
}

std::vector<double> local_peaks(std::span<const double> v) {
  if (v.size() < 3) throw SeriesTooShort("local peaks need at least 3 samples");
  std::vector<double> peaks;
  // A peak is a strict rise followed, possibly after a run of equal samples,
  // by a strict fall; the plateau reports its first sample. A plateau that
  // resumes rising is a pause in the climb, not a summit, so a staircase-up
  // series yields nothing (monotone series have no peaks).
  for (std::size_t i = 1; i + 1 < v.size();) {
    if (!(v[i] > v[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] < v[i]) peaks.push_back(v[i]);
    i = j + 1;
  }
  return peaks;
}

namespace {

WindowMatrix reshape(const double* data, std::size_t n, double dt_s, double window_s) {
  const Micros dt_us = micros_from_seconds(dt_s);
  const Micros t_us = micros_from_seconds(window_s);
  if (dt_us <= 0 || t_us <= 0 || t_us % dt_us != 0)
    throw NonDivisibleWindow("window length is not a multiple of the sample interval");
  const std::size_t s = static_cast<std::size_t>(t_us / dt_us);
  if (n == 0 || n % s != 0)
    throw NonDivisibleWindow("series length is not a whole number of windows");
  const std::size_t w = n / s;
  WindowMatrix wm;
  wm.window_s = window_s;
  wm.dt_s = dt_s;
  wm.m.resize(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(s));
  for (std::size_t i = 0; i < w; ++i)
    for (std::size_t j = 0; j < s; ++j)
      wm.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * s + j];
  return wm;
}

}  // namespace

WindowMatrix window_matrix(std::span<const double> series, double dt_s, double window_s) {
  return reshape(series.data(), series.size(), dt_s, window_s);
}

WindowMatrix window_matrix(std::span<const float> series, double dt_s, double window_s) {
  std::vector<double> tmp(series.begin(), series.end());
  return reshape(tmp.data(), tmp.size(), dt_s, window_s);
}

int dims_to_contribution(std::span<const double> eigenvalues, double threshold) {
  double total = 0.0;
  for (double l : eigenvalues) total += std::max(l, 0.0);
  if (!(total > 0.0)) throw AllZeroSpectrum("eigenvalue spectrum sums to zero");
  double acc = 0.0;
  for (std::size_t d = 0; d < eigenvalues.size(); ++d) {
    acc += std::max(eigenvalues[d], 0.0);
    if (acc / total >= threshold) return static_cast<int>(d) + 1;
  }
  return static_cast<int>(eigenvalues.size());
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidCounts("correlation needs two equal-length sequences of >= 2 values");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw ZeroVariance("constant sequence has no correlation");
  return sab / std::sqrt(saa * sbb);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  return pearson(ra, rb);
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidCounts("correlation needs two equal-length sequences of >= 2 values");
  std::int64_t concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0 && db == 0.0) continue;
      if (da == 0.0) { ++ties_a; continue; }
      if (db == 0.0) { ++ties_b; continue; }
      if ((da > 0.0) == (db > 0.0)) ++concordant; else ++discordant;
    }
  }
  const double n0 = static_cast<double>(concordant + discordant);
  const double denom = std::sqrt((n0 + static_cast<double>(ties_a)) * (n0 + static_cast<double>(ties_b)));
  if (denom == 0.0) throw ZeroVariance("constant sequence has no correlation");
  return static_cast<double>(concordant - discordant) / denom;
}

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidCounts("median of empty sequence");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t distinct_quantized(std::span<const double> values, double bin) {
  if (bin <= 0.0) throw InvalidConfig("quantization bin must be positive");
  std::set<std::int64_t> cells;
  for (double v : values) cells.insert(static_cast<std::int64_t>(std::floor(v / bin)));
  return cells.size();
}

}  // namespace psn
