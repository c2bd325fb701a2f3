#pragma once

// Brute-force symmetric eigensolver used as an independent oracle against
// the production PCA path. Cyclic Jacobi rotations, no shared code with the
// library implementation.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct EigenPairs {
  std::vector<double> values;                // descending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

inline EigenPairs jacobi_eigen(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-26) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });

  EigenPairs out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[idx[k]][idx[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][idx[k]];
  }
  return out;
}

// Covariance of the rows of m (windows as observations), 1/(W-1) normalized,
// built with plain loops.
inline std::vector<std::vector<double>> covariance(const Eigen::MatrixXd& m) {
  const std::size_t w = static_cast<std::size_t>(m.rows());
  const std::size_t s = static_cast<std::size_t>(m.cols());
  std::vector<double> mean(s, 0.0);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < w; ++i) mean[j] += m(static_cast<Eigen::Index>(i),
                                                     static_cast<Eigen::Index>(j));
    mean[j] /= static_cast<double>(w);
  }
  std::vector<std::vector<double>> cov(s, std::vector<double>(s, 0.0));
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t k = j; k < s; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < w; ++i)
        acc += (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - mean[j]) *
               (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - mean[k]);
      cov[j][k] = cov[k][j] = acc / static_cast<double>(w - 1);
    }
  }
  return cov;
}

// The library's published sign convention, applied independently: largest
// magnitude entry positive, earliest index wins ties.
inline void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  double best_abs = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > best_abs) {
      best_abs = std::abs(v[i]);
      best = i;
    }
  }
  if (v[best] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace oracle
