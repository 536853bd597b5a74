#ifndef DEPCAM_DPP_PRIOR_HPP
#define DEPCAM_DPP_PRIOR_HPP

#include <vector>

#include <Eigen/Dense>

#include "depcam/components.hpp"

// Determinantal point process prior over a set of mixing components.
//
// The L-ensemble kernel factors as L = diag(q) S diag(q) with
//   q_k      = exp(-xi/2 * ||Phi^k||_1)                       (quality)
//   S_{kk'}  = exp(varrho * (sum_{i,j} <U^k_i, U^k'_j> - d))  (similarity)
// For orthonormal bases the double sum is u_k . u_k' with u = U * 1 and
// ||u||^2 = d, so S_{kk'} = exp(-varrho/2 * ||u_k - u_k'||^2). That form is a
// Gaussian kernel, hence S is PSD with a unit diagonal; it is what we compute.
namespace depcam::dpp {

struct LEnsemble {
  Eigen::MatrixXd L;             // diag(q) S diag(q), jitter NOT included
  Eigen::VectorXd qualities;     // q
  Eigen::MatrixXd similarities;  // S
  double jitter = 0.0;           // added to the diagonal of L before det/inverse

  Eigen::Index size() const { return L.rows(); }
  Eigen::MatrixXd regularized() const;
};

double quality(const Scales& phi, double xi);

// Throws UsageError when the shapes of a and b differ.
double similarity(const Basis& a, const Basis& b, double varrho);

// Throws UsageError for an empty set or mismatched shapes.
LEnsemble build_l_ensemble(const std::vector<Component>& components, double xi,
                           double varrho);

// log det(L + jitter I). Throws NumericalError if that is not finite.
double log_det_prior(const LEnsemble& e);

// Euclidean gradient of log_det_prior w.r.t. the entries of component k's
// basis:
//   G_ij = sum_{k' != k} 2 [L^-1]_{kk'} q_k q_k' S_kk' varrho (u_k'_i - u_k_i).
Eigen::MatrixXd grad_log_det_wrt_upsilon(
    const std::vector<Component>& components, const LEnsemble& e,
    Eigen::Index k, double varrho);

// d log det L / d Phi_i = -xi * s, where s is the subgradient of |Phi_i|:
// sign(Phi_i) away from zero, `subgradient_at_zero` (in {-1, 0, +1}) at zero.
double grad_log_det_wrt_phi(const Scales& phi, double xi, Eigen::Index i,
                            int subgradient_at_zero = 0);

}  // namespace depcam::dpp

#endif  // DEPCAM_DPP_PRIOR_HPP
