#include "depcam/expfam.hpp"

#include <cmath>
#include <string>

#include "depcam/errors.hpp"

namespace depcam::expfam {

double log_partition(const Eigen::Ref<const Eigen::VectorXd>& theta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) sum += log_partition(theta(i));
  return sum;
}

Eigen::VectorXd log_partition_grad(
    const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return theta.unaryExpr([](double t) { return log_partition_grad(t); });
}

double log_likelihood(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& theta) {
  if (x.size() != theta.size()) {
    throw UsageError("log_likelihood: observation has length " +
                     std::to_string(x.size()) + " but theta has length " +
                     std::to_string(theta.size()));
  }
  return x.dot(theta) + log_partition(theta);
}

Eigen::VectorXd mean_params(const Eigen::Ref<const Eigen::VectorXd>& theta) {
  return theta.unaryExpr([](double t) { return mean_param(t); });
}

Eigen::VectorXd row_log_likelihoods(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& Theta) {
  if (X.rows() != Theta.rows() || X.cols() != Theta.cols()) {
    throw UsageError("row_log_likelihoods: shape mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(X.rows());
  for (Eigen::Index i = 0; i < X.cols(); ++i) {
    for (Eigen::Index n = 0; n < X.rows(); ++n) {
      const double t = Theta(n, i);
      out(n) += X(n, i) * t + log_partition(t);
    }
  }
  return out;
}

}  // namespace depcam::expfam
