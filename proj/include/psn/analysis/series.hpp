#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace psn {

// (sent - drops)/sent; an idle flow that never sent counts as perfect.
double throughput(std::int64_t sent, std::int64_t drops);

// Values v[i] with v[i-1] < v[i] >= v[i+1]; a plateau reports its first
// sample, endpoints never qualify.
std::vector<double> local_peaks(std::span<const double> v);

// Row-per-window reshape of a uniformly sampled series.
struct WindowMatrix {
  Eigen::MatrixXd m;  // W x S
  double window_s = 0.0;
  double dt_s = 0.0;
  int W() const { return static_cast<int>(m.rows()); }
  int S() const { return static_cast<int>(m.cols()); }
};

WindowMatrix window_matrix(std::span<const double> series, double dt_s, double window_s);
WindowMatrix window_matrix(std::span<const float> series, double dt_s, double window_s);

// Smallest d such that the top-d eigenvalues reach `threshold` of the total.
int dims_to_contribution(std::span<const double> eigenvalues, double threshold = 0.99);

double pearson(std::span<const double> a, std::span<const double> b);

// Rank correlations (average ranks for ties; tau-b for Kendall).
double spearman(std::span<const double> a, std::span<const double> b);
double kendall_tau(std::span<const double> a, std::span<const double> b);

double median(std::vector<double> v);

// Number of distinct values after flooring into bins of `bin` width.
std::size_t distinct_quantized(std::span<const double> values, double bin);

}  // namespace psn
