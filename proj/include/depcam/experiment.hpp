#ifndef DEPCAM_EXPERIMENT_HPP
#define DEPCAM_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "depcam/data.hpp"
#include "depcam/inference.hpp"

namespace depcam::experiment {

struct CvConfig {
  FitConfig fit;  // lambda and seed are overridden per run
  int folds = 5;
  std::vector<double> lambdas = {0.0, 1.0, 10.0};
  int seeds = 5;
  std::uint64_t seed = 0;
  double tau = 0.05;
};

struct CvRun {
  double lambda = 0.0;
  int seed_index = 0;
  int fold = 0;
  std::uint64_t fit_seed = 0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double test_mean_log_likelihood = 0.0;
  double mean_effective_dims = 0.0;
  int outer_iters = 0;
  bool converged = false;
  double final_objective = 0.0;
};

struct CvSummary {
  double lambda = 0.0;
  int runs = 0;
  double train_mean = 0.0;
  double train_std = 0.0;
  double test_mean = 0.0;
  double test_std = 0.0;
};

// Seeds used by the cross-validation protocol. The fold split depends on the
// seed index only and the fit initialization on (seed index, fold), so every
// lambda sees the same splits and the same starting points.
std::uint64_t split_seed(std::uint64_t base, int seed_index);
std::uint64_t fit_seed(std::uint64_t base, int seed_index, int fold);

// Fits on the train part of one fold and scores both parts. Training accuracy
// uses the argmax of the responsibilities, test accuracy uses predict().
CvRun run_fold(const BinaryDataset& data, const data::Fold& fold,
               const FitConfig& fit_cfg, double tau);

using ProgressFn = std::function<void(const CvRun&)>;

// Runs every (lambda, seed, fold) job in that nesting order. Needs labels.
std::vector<CvRun> cross_validate(const BinaryDataset& data, const CvConfig& cfg,
                                  const ProgressFn& progress = {});

// One row per lambda in first-seen order; std is the population std.
std::vector<CvSummary> summarize(const std::vector<CvRun>& runs);

void write_runs_csv(const std::vector<CvRun>& runs, std::ostream& out);
void write_summary_csv(const std::vector<CvSummary>& summary, std::ostream& out);

}  // namespace depcam::experiment

#endif  // DEPCAM_EXPERIMENT_HPP
