#include "depcam/dpp_prior.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "depcam/errors.hpp"

namespace depcam::dpp {

namespace {

constexpr double kJitterTrigger = 1e-12;
constexpr double kJitterAmount = 1e-10;

double similarity_from_sums(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                            double varrho) {
  return std::exp(-0.5 * varrho * (u - v).squaredNorm());
}

void check_same_shape(const Basis& a, const Basis& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.latent_dim() != b.latent_dim()) {
    throw UsageError("similarity: bases have shapes " +
                     std::to_string(a.ambient_dim()) + "x" +
                     std::to_string(a.latent_dim()) + " and " +
                     std::to_string(b.ambient_dim()) + "x" +
                     std::to_string(b.latent_dim()));
  }
}

}  // namespace

Eigen::MatrixXd LEnsemble::regularized() const {
  Eigen::MatrixXd out = L;
  out.diagonal().array() += jitter;
  return out;
}

double quality(const Scales& phi, double xi) {
  return std::exp(-0.5 * xi * phi.lpNorm<1>());
}

double similarity(const Basis& a, const Basis& b, double varrho) {
  check_same_shape(a, b);
  return similarity_from_sums(a.column_sum(), b.column_sum(), varrho);
}

LEnsemble build_l_ensemble(const std::vector<Component>& components, double xi,
                           double varrho) {
  const auto K = static_cast<Eigen::Index>(components.size());
  if (K < 1) throw UsageError("build_l_ensemble: empty component set");

  std::vector<Eigen::VectorXd> sums;
  sums.reserve(components.size());
  for (const auto& c : components) {
    check_same_shape(components.front().basis, c.basis);
    sums.push_back(c.basis.column_sum());
  }

  LEnsemble e;
  e.qualities.resize(K);
  e.similarities.resize(K, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    e.qualities(k) = quality(components[k].scales, xi);
    e.similarities(k, k) = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double s = similarity_from_sums(sums[k], sums[j], varrho);
      e.similarities(k, j) = s;
      e.similarities(j, k) = s;
    }
  }
  e.L = e.qualities.asDiagonal() * e.similarities * e.qualities.asDiagonal();

  const double scale = e.L.trace() / static_cast<double>(K);
  const double min_eig = K == 1 ? e.L(0, 0)
                                : Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                      e.L, Eigen::EigenvaluesOnly)
                                      .eigenvalues()
                                      .minCoeff();
  if (min_eig < kJitterTrigger * scale) e.jitter = kJitterAmount * scale;
  return e;
}

double log_det_prior(const LEnsemble& e) {
  Eigen::LLT<Eigen::MatrixXd> llt(e.regularized());
  if (llt.info() != Eigen::Success) {
    throw NumericalError("log_det_prior: L-ensemble is not positive definite");
  }
  const double value =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  if (!std::isfinite(value)) {
    throw NumericalError("log_det_prior: non-finite log determinant");
  }
  return value;
}

Eigen::MatrixXd grad_log_det_wrt_upsilon(
    const std::vector<Component>& components, const LEnsemble& e,
    Eigen::Index k, double varrho) {
  const auto K = static_cast<Eigen::Index>(components.size());
  if (k < 0 || k >= K || e.size() != K) {
    throw UsageError("grad_log_det_wrt_upsilon: bad component index");
  }
  const Basis& own = components[k].basis;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(own.ambient_dim(),
                                               own.latent_dim());
  if (K == 1) return grad;

  Eigen::LLT<Eigen::MatrixXd> llt(e.regularized());
  if (llt.info() != Eigen::Success) {
    throw NumericalError(
        "grad_log_det_wrt_upsilon: L-ensemble is singular after jitter");
  }
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(K, K));
  if (!inv.allFinite()) {
    throw NumericalError("grad_log_det_wrt_upsilon: non-finite inverse");
  }

  const Eigen::VectorXd u = own.column_sum();
  Eigen::VectorXd row_grad = Eigen::VectorXd::Zero(own.ambient_dim());
  for (Eigen::Index j = 0; j < K; ++j) {
    if (j == k) continue;
    const double weight = 2.0 * inv(k, j) * e.qualities(k) * e.qualities(j) *
                          e.similarities(k, j) * varrho;
    row_grad += weight * (components[j].basis.column_sum() - u);
  }
  // d u_i / d U_ij = 1 for every column j, so all columns share the gradient.
  grad.colwise() = row_grad;
  return grad;
}

double grad_log_det_wrt_phi(const Scales& phi, double xi, Eigen::Index i,
                            int subgradient_at_zero) {
  if (i < 0 || i >= phi.size()) {
    throw UsageError("grad_log_det_wrt_phi: index out of range");
  }
  const double v = phi(i);
  const double s = v > 0.0 ? 1.0 : v < 0.0 ? -1.0
                                           : static_cast<double>(subgradient_at_zero);
  return -xi * s;
}

}  // namespace depcam::dpp
