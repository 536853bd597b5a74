#ifndef DEPCAM_EVAL_HPP
#define DEPCAM_EVAL_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "depcam/components.hpp"
#include "depcam/data.hpp"
#include "depcam/inference.hpp"

namespace depcam::eval {

struct AccuracyResult {
  double accuracy = 0.0;
  // permutation[c] is the label assigned to cluster c.
  std::vector<int> permutation;
};

// Best agreement over all bijections cluster -> label on {0..K-1}.
// Exhaustive (lexicographically first optimum) for K <= 6, Hungarian above.
// Throws UsageError on a length mismatch or an entry outside [0, K).
AccuracyResult clustering_accuracy(const std::vector<int>& pred,
                                   const std::vector<int>& truth, int K);

// Number of |phi_i| > tau * max_j |phi_j|; zero when phi is all zeros.
int effective_dims(const Scales& phi, double tau = 0.05);

struct EvalReport {
  double accuracy = 0.0;
  std::vector<int> matched_permutation;
  double mean_log_likelihood = 0.0;
  std::vector<int> effective_dims_per_component;
};

// Predicts every sample of a labelled dataset and scores it.
EvalReport evaluate(const MixtureModel& model, const BinaryDataset& data,
                    double tau = 0.05);

// Argmax of each row, ties to the lowest column.
std::vector<int> hard_assignments(const Eigen::Ref<const Eigen::MatrixXd>& R);

// CSV: component,dim_index,value,abs_value,sign
void export_hinton(const MixtureModel& model, const std::filesystem::path& path);

enum class ImageFormat { kCsv, kPgm };

// alpha_n = sigmoid(W^{k*} y_n), k* = argmax_k R_nk. CSV writes one row of D
// values per sample to `path`; PGM writes sample_NNNNN.pgm files into the
// directory `path` (square images when D is a perfect square, else 1 x D).
void export_reconstructions(const MixtureModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& Y,
                            const Eigen::Ref<const Eigen::MatrixXd>& R,
                            const std::filesystem::path& path,
                            ImageFormat format);

Eigen::MatrixXd reconstructed_means(const MixtureModel& model,
                                    const Eigen::Ref<const Eigen::MatrixXd>& Y,
                                    const Eigen::Ref<const Eigen::MatrixXd>& R);

// round-half-up of 255 * alpha
int gray_level(double alpha);

}  // namespace depcam::eval

#endif  // DEPCAM_EVAL_HPP
