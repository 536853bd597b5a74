#ifndef DEPCAM_COMPONENTS_HPP
#define DEPCAM_COMPONENTS_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace depcam {

// Orthonormal D x d matrix whose columns are the elementary principal
// directions of one mixing component.
class Basis {
 public:
  static constexpr double kTolerance = 1e-8;

  // Validates D >= d >= 1 and ||M^T M - I||_F <= tol; throws
  // DegenerateInputError otherwise.
  static Basis from_matrix(Eigen::MatrixXd m, double tol = kTolerance);

  // Skips validation. Used for finite-difference probes that deliberately
  // leave the manifold.
  static Basis unchecked(Eigen::MatrixXd m) { return Basis(std::move(m)); }

  const Eigen::MatrixXd& matrix() const { return m_; }
  Eigen::Index ambient_dim() const { return m_.rows(); }
  Eigen::Index latent_dim() const { return m_.cols(); }

  // ||M^T M - I||_F
  double orthonormality_error() const;

  // Sum of the columns, M * 1. Similarities only depend on this vector.
  Eigen::VectorXd column_sum() const { return m_.rowwise().sum(); }

 private:
  explicit Basis(Eigen::MatrixXd m) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

// Signed diagonal of Phi. Entries may be exactly zero (pruned direction).
using Scales = Eigen::VectorXd;

struct Component {
  Basis basis;
  Scales scales;

  Eigen::Index ambient_dim() const { return basis.ambient_dim(); }
  Eigen::Index latent_dim() const { return basis.latent_dim(); }
};

// W = Upsilon * diag(Phi).
Eigen::MatrixXd materialize(const Component& c);
Eigen::MatrixXd materialize(const Basis& basis, const Scales& scales);

// Modified Gram-Schmidt. Throws DegenerateInputError when a column is
// (numerically) in the span of the previous ones.
Basis orthonormalize(const Eigen::Ref<const Eigen::MatrixXd>& m);

// Random orthonormal basis (Gaussian entries, then orthonormalize) and scales
// uniform on [0.1, 1.0]. Deterministic in the seed.
Component init_component(Eigen::Index D, Eigen::Index d, std::uint64_t seed);

}  // namespace depcam

#endif  // DEPCAM_COMPONENTS_HPP
