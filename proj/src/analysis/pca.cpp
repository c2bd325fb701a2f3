#include "psn/analysis/pca.hpp"

#include <algorithm>
#include <cmath>

#include "psn/errors.hpp"

namespace psn {

namespace {

// Largest-magnitude entry positive; on exact magnitude ties the earliest
// index decides. Keeps projections reproducible across eigensolvers.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index best = 0;
  double best_abs = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (v[best] < 0.0) v = -v;
}

}  // namespace

PcaModel pca_project(const WindowMatrix& wm, int k) {
  const Eigen::Index w = wm.m.rows();
  const Eigen::Index s = wm.m.cols();
  if (w < 2) throw InvalidCounts("PCA needs at least 2 windows");

  PcaModel model;
  model.mean = wm.m.colwise().mean();
  Eigen::MatrixXd c = wm.m.rowwise() - model.mean.transpose();

  const Eigen::Index spectrum = std::min(w, s);
  const Eigen::Index kk = std::min<Eigen::Index>(std::max(k, 0), spectrum);
  model.eigenvalues = Eigen::VectorXd::Zero(spectrum);
  model.components = Eigen::MatrixXd::Zero(s, kk);
  model.projections = Eigen::MatrixXd::Zero(w, kk);

  if (c.cwiseAbs().maxCoeff() == 0.0) return model;  // all windows identical

  if (w >= s) {
    // Direct S x S covariance.
    Eigen::MatrixXd cov = (c.transpose() * c) / static_cast<double>(w - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    for (Eigen::Index i = 0; i < spectrum; ++i)
      model.eigenvalues[i] = std::max(es.eigenvalues()[s - 1 - i], 0.0);
    for (Eigen::Index i = 0; i < kk; ++i) {
      Eigen::VectorXd v = es.eigenvectors().col(s - 1 - i);
      fix_sign(v);
      model.components.col(i) = v;
    }
  } else {
    // Gram trick: eigenvectors of C*C^T lift to covariance eigenvectors.
    Eigen::MatrixXd gram = (c * c.transpose()) / static_cast<double>(w - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    for (Eigen::Index i = 0; i < spectrum; ++i)
      model.eigenvalues[i] = std::max(es.eigenvalues()[w - 1 - i], 0.0);
    for (Eigen::Index i = 0; i < kk; ++i) {
      const double lambda = model.eigenvalues[i];
      if (lambda <= 0.0) continue;  // zero-variance direction stays a zero column
      Eigen::VectorXd u = es.eigenvectors().col(w - 1 - i);
      Eigen::VectorXd v = c.transpose() * u;
      const double norm = v.norm();
      if (norm == 0.0) continue;
      v /= norm;
      fix_sign(v);
      model.components.col(i) = v;
    }
  }

  model.projections = c * model.components;
  return model;
}

}  // namespace psn
