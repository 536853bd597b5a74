#include "depcam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <iomanip>
#include <ostream>

#include "depcam/errors.hpp"
#include "depcam/eval.hpp"
#include "depcam/rng.hpp"

namespace depcam::experiment {

std::uint64_t split_seed(std::uint64_t base, int seed_index) {
  return SeedStream(base).split("cv-split").split(static_cast<std::uint64_t>(seed_index)).seed();
}

std::uint64_t fit_seed(std::uint64_t base, int seed_index, int fold) {
  return SeedStream(base)
      .split("cv-fit")
      .split(static_cast<std::uint64_t>(seed_index))
      .split(static_cast<std::uint64_t>(fold))
      .seed();
}

CvRun run_fold(const BinaryDataset& data, const data::Fold& fold,
               const FitConfig& fit_cfg, double tau) {
  if (!data.labels) throw UsageError("cross-validation needs labelled data");
  const BinaryDataset train = data.subset(fold.train);
  const BinaryDataset test = data.subset(fold.test);

  const auto result = inference::fit(train, fit_cfg);
  int K = fit_cfg.K;
  for (int l : *data.labels) K = std::max(K, l + 1);

  CvRun run;
  run.lambda = fit_cfg.lambda;
  run.fit_seed = fit_cfg.seed;
  run.train_accuracy =
      eval::clustering_accuracy(eval::hard_assignments(result.state.R),
                                *train.labels, K)
          .accuracy;
  const auto report = eval::evaluate(result.model, test, tau);
  run.test_accuracy = report.accuracy;
  run.test_mean_log_likelihood = report.mean_log_likelihood;
  double dims = 0.0;
  for (int e : report.effective_dims_per_component) dims += e;
  run.mean_effective_dims =
      dims / static_cast<double>(report.effective_dims_per_component.size());
  run.outer_iters = result.report.outer_iters;
  run.converged = result.report.converged;
  run.final_objective = result.report.final_objective();
  return run;
}

std::vector<CvRun> cross_validate(const BinaryDataset& data, const CvConfig& cfg,
                                  const ProgressFn& progress) {
  if (!data.labels) throw UsageError("cross-validation needs labelled data");
  if (cfg.seeds < 1) throw UsageError("cross-validation needs at least one seed");
  if (cfg.lambdas.empty()) throw UsageError("cross-validation needs a lambda");

  std::vector<std::vector<data::Fold>> splits;
  for (int s = 0; s < cfg.seeds; ++s) {
    splits.push_back(data::kfold_split(data.size(), cfg.folds, split_seed(cfg.seed, s)));
  }

  std::vector<CvRun> runs;
  for (double lambda : cfg.lambdas) {
    for (int s = 0; s < cfg.seeds; ++s) {
      for (int f = 0; f < cfg.folds; ++f) {
        FitConfig fc = cfg.fit;
        fc.lambda = lambda;
        fc.seed = fit_seed(cfg.seed, s, f);
        CvRun run = run_fold(data, splits[static_cast<std::size_t>(s)][static_cast<std::size_t>(f)],
                             fc, cfg.tau);
        run.seed_index = s;
        run.fold = f;
        if (progress) progress(run);
        runs.push_back(run);
      }
    }
  }
  return runs;
}

std::vector<CvSummary> summarize(const std::vector<CvRun>& runs) {
  std::vector<CvSummary> out;
  for (const auto& r : runs) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CvSummary& s) { return s.lambda == r.lambda; });
    if (it == out.end()) {
      out.push_back(CvSummary{r.lambda});
      it = std::prev(out.end());
    }
    ++it->runs;
    it->train_mean += r.train_accuracy;
    it->test_mean += r.test_accuracy;
  }
  for (auto& s : out) {
    s.train_mean /= s.runs;
    s.test_mean /= s.runs;
  }
  for (const auto& r : runs) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CvSummary& s) { return s.lambda == r.lambda; });
    it->train_std += (r.train_accuracy - it->train_mean) * (r.train_accuracy - it->train_mean);
    it->test_std += (r.test_accuracy - it->test_mean) * (r.test_accuracy - it->test_mean);
  }
  for (auto& s : out) {
    s.train_std = std::sqrt(s.train_std / s.runs);
    s.test_std = std::sqrt(s.test_std / s.runs);
  }
  return out;
}

void write_runs_csv(const std::vector<CvRun>& runs, std::ostream& out) {
  out << std::setprecision(17);
  out << "lambda,seed_index,fold,fit_seed,train_accuracy,test_accuracy,"
         "test_mean_log_likelihood,mean_effective_dims,outer_iters,converged,"
         "final_objective\n";
  for (const auto& r : runs) {
    out << r.lambda << ',' << r.seed_index << ',' << r.fold << ',' << r.fit_seed
        << ',' << r.train_accuracy << ',' << r.test_accuracy << ','
        << r.test_mean_log_likelihood << ',' << r.mean_effective_dims << ','
        << r.outer_iters << ',' << (r.converged ? 1 : 0) << ','
        << r.final_objective << '\n';
  }
}

void write_summary_csv(const std::vector<CvSummary>& summary, std::ostream& out) {
  out << std::setprecision(17);
  out << "lambda,runs,train_accuracy_mean,train_accuracy_std,"
         "test_accuracy_mean,test_accuracy_std\n";
  for (const auto& s : summary) {
    out << s.lambda << ',' << s.runs << ',' << s.train_mean << ',' << s.train_std
        << ',' << s.test_mean << ',' << s.test_std << '\n';
  }
}

}  // namespace depcam::experiment
