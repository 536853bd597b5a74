#ifndef DEPCAM_EXPFAM_HPP
#define DEPCAM_EXPFAM_HPP

#include <cmath>

#include <Eigen/Dense>

// Bernoulli member of the exponential family in natural form:
//   p(x | theta) = exp(x * theta + g(theta)),  g(theta) = -log(1 + e^theta).
// Note that g here is the *negated* log-partition, following the model's
// convention, so log_partition() is always <= 0.
namespace depcam::expfam {

// Scalar helpers, overflow safe for any finite theta.
inline double log_partition(double theta) {
  constexpr double kCutoff = 30.0;
  if (theta > kCutoff) return -theta;
  if (theta < -kCutoff) return -std::exp(theta);
  if (theta > 0.0) return -theta - std::log1p(std::exp(-theta));
  return -std::log1p(std::exp(theta));
}

inline double mean_param(double theta) {
  if (theta >= 0.0) return 1.0 / (1.0 + std::exp(-theta));
  const double e = std::exp(theta);
  return e / (1.0 + e);
}

inline double log_partition_grad(double theta) { return -mean_param(theta); }

double log_partition(const Eigen::Ref<const Eigen::VectorXd>& theta);

// Element-wise g'(theta) = 1/(1+e^theta) - 1 = -sigmoid(theta).
Eigen::VectorXd log_partition_grad(
    const Eigen::Ref<const Eigen::VectorXd>& theta);

// x^T theta + g(theta). Throws UsageError on a length mismatch.
double log_likelihood(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& theta);

// Element-wise sigmoid: the Bernoulli mean alpha for each natural parameter.
Eigen::VectorXd mean_params(const Eigen::Ref<const Eigen::VectorXd>& theta);

// Row-wise log-likelihoods for a batch: out(n) = X.row(n) . Theta.row(n) +
// g(Theta.row(n)).
Eigen::VectorXd row_log_likelihoods(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& Theta);

}  // namespace depcam::expfam

#endif  // DEPCAM_EXPFAM_HPP
