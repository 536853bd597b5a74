#include "depcam/components.hpp"

#include <cmath>
#include <random>
#include <string>

#include "depcam/errors.hpp"
#include "depcam/rng.hpp"

namespace depcam {

Basis Basis::from_matrix(Eigen::MatrixXd m, double tol) {
  if (m.cols() < 1 || m.rows() < m.cols()) {
    throw DegenerateInputError("basis must satisfy D >= d >= 1, got " +
                               std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()));
  }
  Basis b(std::move(m));
  const double err = b.orthonormality_error();
  if (!(err <= tol)) {
    throw DegenerateInputError("basis is not orthonormal (||U^T U - I||_F = " +
                               std::to_string(err) + ")");
  }
  return b;
}

double Basis::orthonormality_error() const {
  const Eigen::Index d = m_.cols();
  return (m_.transpose() * m_ - Eigen::MatrixXd::Identity(d, d)).norm();
}

Eigen::MatrixXd materialize(const Basis& basis, const Scales& scales) {
  return basis.matrix() * scales.asDiagonal();
}

Eigen::MatrixXd materialize(const Component& c) {
  return materialize(c.basis, c.scales);
}

Basis orthonormalize(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.cols() < 1 || m.rows() < m.cols()) {
    throw DegenerateInputError("orthonormalize: need D >= d >= 1");
  }
  Eigen::MatrixXd q = m;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const double original = m.col(j).norm();
    for (Eigen::Index i = 0; i < j; ++i) {
      q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    const double norm = q.col(j).norm();
    if (!(norm > 1e-12 * std::max(original, 1.0)) || !std::isfinite(norm)) {
      throw DegenerateInputError("orthonormalize: column " + std::to_string(j) +
                                 " is linearly dependent on earlier columns");
    }
    q.col(j) /= norm;
  }
  return Basis::unchecked(std::move(q));
}

Component init_component(Eigen::Index D, Eigen::Index d, std::uint64_t seed) {
  if (d < 1 || D < d) {
    throw UsageError("init_component: need D >= d >= 1");
  }
  auto engine = SeedStream(seed).engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.1, 1.0);

  Eigen::MatrixXd raw(D, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < D; ++i) raw(i, j) = normal(engine);
  Scales phi(d);
  for (Eigen::Index j = 0; j < d; ++j) phi(j) = uniform(engine);

  // A Gaussian matrix is full rank with probability one.
  return Component{orthonormalize(raw), std::move(phi)};
}

}  // namespace depcam
