#ifndef DEPCAM_DATA_HPP
#define DEPCAM_DATA_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace depcam {

// N x D matrix of 0/1 observations, stored as doubles so it feeds straight
// into the linear algebra.
struct BinaryDataset {
  Eigen::MatrixXd X;
  std::optional<std::vector<int>> labels;
  std::vector<std::string> feature_names;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dims() const { return X.cols(); }
  bool has_labels() const { return labels.has_value(); }

  // Throws UsageError if an entry is not exactly 0/1 or a label is negative
  // or the label count is wrong.
  void validate() const;

  BinaryDataset subset(const std::vector<Eigen::Index>& rows) const;

  bool operator==(const BinaryDataset& other) const;
};

namespace data {

struct SyntheticConfig {
  int classes = 3;
  int prototypes_per_class = 3;
  int copies = 50;
  int dims = 16;
  double flip_prob = 0.1;
  std::vector<double> class_means = {0.9, 0.5, 0.1};
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  BinaryDataset noisy;
  BinaryDataset clean;
};

// Prototype bits ~ Bernoulli(class mean), each prototype copied `copies`
// times (clean), then every bit flipped with flip_prob (noisy).
SyntheticData generate_synthetic(const SyntheticConfig& cfg);

// Comma separated, optional header row, optional trailing "label" column.
// A header is recognised when the first row contains a non-numeric cell.
// Parse errors report 1-based data row (header excluded) and column.
BinaryDataset load_csv(const std::filesystem::path& path);
void save_csv(const BinaryDataset& ds, const std::filesystem::path& path);

struct Fold {
  std::vector<Eigen::Index> train;
  std::vector<Eigen::Index> test;
};

// Seeded shuffle of 0..N-1 cut into `folds` contiguous blocks; block f is
// the test set of fold f. Block sizes differ by at most one.
std::vector<Fold> kfold_split(Eigen::Index N, int folds, std::uint64_t seed);

}  // namespace data
}  // namespace depcam

#endif  // DEPCAM_DATA_HPP
