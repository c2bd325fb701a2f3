#pragma once

#include <Eigen/Dense>

#include "psn/analysis/series.hpp"

namespace psn {

// Principal components of a window matrix: each of the W windows is one
// observation with S features. Covariance is over windows with 1/(W-1)
// normalization; eigenvalues cover the full spectrum (length min(W,S)) so
// contribution rates can be computed, while only the top-k eigenvectors and
// projections are materialized.
struct PcaModel {
  Eigen::VectorXd mean;         // length S
  Eigen::VectorXd eigenvalues;  // min(W,S), descending, clamped at 0
  Eigen::MatrixXd components;   // S x k, orthonormal columns
  Eigen::MatrixXd projections;  // W x k
};

PcaModel pca_project(const WindowMatrix& m, int k = 2);

}  // namespace psn
