#include "depcam/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>

#include "depcam/errors.hpp"
#include "depcam/expfam.hpp"

namespace depcam::eval {

namespace {

constexpr int kExhaustiveLimit = 6;

// Minimum-cost assignment on a square cost matrix (Hungarian / Kuhn-Munkres,
// O(n^3) potentials formulation). Returns row -> column.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, 0);
  for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

std::string sign_name(double v) {
  return v > 0.0 ? "+" : v < 0.0 ? "-" : "0";
}

}  // namespace

AccuracyResult clustering_accuracy(const std::vector<int>& pred,
                                   const std::vector<int>& truth, int K) {
  if (pred.size() != truth.size()) {
    throw UsageError("clustering_accuracy: " + std::to_string(pred.size()) +
                     " predictions for " + std::to_string(truth.size()) +
                     " labels");
  }
  if (K < 1) throw UsageError("clustering_accuracy: K must be >= 1");
  std::vector<std::vector<long>> counts(K, std::vector<long>(K, 0));
  for (std::size_t n = 0; n < pred.size(); ++n) {
    if (pred[n] < 0 || pred[n] >= K || truth[n] < 0 || truth[n] >= K) {
      throw UsageError("clustering_accuracy: entry outside [0, K) at index " +
                       std::to_string(n));
    }
    ++counts[pred[n]][truth[n]];
  }
  const double total = pred.empty() ? 1.0 : static_cast<double>(pred.size());

  AccuracyResult out;
  if (K <= kExhaustiveLimit) {
    std::vector<int> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    long best = -1;
    do {
      long agree = 0;
      for (int c = 0; c < K; ++c) agree += counts[c][perm[c]];
      if (agree > best) {
        best = agree;
        out.permutation = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.accuracy = static_cast<double>(best) / total;
    return out;
  }

  std::vector<std::vector<double>> cost(K, std::vector<double>(K));
  for (int c = 0; c < K; ++c)
    for (int l = 0; l < K; ++l) cost[c][l] = -static_cast<double>(counts[c][l]);
  out.permutation = hungarian(cost);
  long agree = 0;
  for (int c = 0; c < K; ++c) agree += counts[c][out.permutation[c]];
  out.accuracy = static_cast<double>(agree) / total;
  return out;
}

int effective_dims(const Scales& phi, double tau) {
  if (phi.size() == 0) return 0;
  const double top = phi.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  int count = 0;
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    if (std::abs(phi(i)) > tau * top) ++count;
  }
  return count;
}

std::vector<int> hard_assignments(const Eigen::Ref<const Eigen::MatrixXd>& R) {
  std::vector<int> out(static_cast<std::size_t>(R.rows()));
  for (Eigen::Index n = 0; n < R.rows(); ++n) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < R.cols(); ++k) {
      if (R(n, k) > R(n, best)) best = k;
    }
    out[static_cast<std::size_t>(n)] = static_cast<int>(best);
  }
  return out;
}

EvalReport evaluate(const MixtureModel& model, const BinaryDataset& data,
                    double tau) {
  if (!data.labels) throw UsageError("evaluate: dataset has no labels");
  if (data.dims() != model.D()) {
    throw UsageError("evaluate: data has " + std::to_string(data.dims()) +
                     " columns, model expects " + std::to_string(model.D()));
  }
  EvalReport report;
  std::vector<int> pred;
  double ll = 0.0;
  for (Eigen::Index n = 0; n < data.size(); ++n) {
    const Eigen::VectorXd x = data.X.row(n).transpose();
    const auto p = inference::predict(x, model);
    pred.push_back(static_cast<int>(p.z_star));
    ll += inference::predictive_log_likelihood(x, p.y_star, model);
  }
  int K = static_cast<int>(model.K());
  for (int l : *data.labels) K = std::max(K, l + 1);
  const auto acc = clustering_accuracy(pred, *data.labels, K);
  report.accuracy = acc.accuracy;
  report.matched_permutation = acc.permutation;
  report.mean_log_likelihood =
      data.size() > 0 ? ll / static_cast<double>(data.size()) : 0.0;
  for (const auto& c : model.components) {
    report.effective_dims_per_component.push_back(effective_dims(c.scales, tau));
  }
  return report;
}

void export_hinton(const MixtureModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "component,dim_index,value,abs_value,sign\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < model.components.size(); ++k) {
    const auto& phi = model.components[k].scales;
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
      out << k << ',' << i << ',' << phi(i) << ',' << std::abs(phi(i)) << ','
          << sign_name(phi(i)) << '\n';
    }
  }
  if (!out) throw std::runtime_error("error writing " + path.string());
}

Eigen::MatrixXd reconstructed_means(const MixtureModel& model,
                                    const Eigen::Ref<const Eigen::MatrixXd>& Y,
                                    const Eigen::Ref<const Eigen::MatrixXd>& R) {
  if (Y.rows() != R.rows() || R.cols() != model.K() || Y.cols() != model.d()) {
    throw UsageError("reconstructed_means: shape mismatch");
  }
  const auto transforms = model.transforms();
  const auto assign = hard_assignments(R);
  Eigen::MatrixXd out(Y.rows(), model.D());
  for (Eigen::Index n = 0; n < Y.rows(); ++n) {
    const Eigen::VectorXd theta =
        transforms[static_cast<std::size_t>(assign[static_cast<std::size_t>(n)])] *
        Y.row(n).transpose();
    out.row(n) = expfam::mean_params(theta).transpose();
  }
  return out;
}

int gray_level(double alpha) {
  return static_cast<int>(std::floor(255.0 * alpha + 0.5));
}

void export_reconstructions(const MixtureModel& model,
                            const Eigen::Ref<const Eigen::MatrixXd>& Y,
                            const Eigen::Ref<const Eigen::MatrixXd>& R,
                            const std::filesystem::path& path,
                            ImageFormat format) {
  const Eigen::MatrixXd alpha = reconstructed_means(model, Y, R);
  if (format == ImageFormat::kCsv) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    for (Eigen::Index n = 0; n < alpha.rows(); ++n) {
      for (Eigen::Index i = 0; i < alpha.cols(); ++i) {
        if (i) out << ',';
        out << alpha(n, i);
      }
      out << '\n';
    }
    if (!out) throw std::runtime_error("error writing " + path.string());
    return;
  }

  std::filesystem::create_directories(path);
  const auto D = alpha.cols();
  auto side = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(D))));
  const bool square = side * side == D;
  const Eigen::Index width = square ? side : D;
  const Eigen::Index height = square ? side : 1;
  for (Eigen::Index n = 0; n < alpha.rows(); ++n) {
    char name[32];
    std::snprintf(name, sizeof(name), "sample_%05ld.pgm", static_cast<long>(n));
    std::ofstream out(path / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (path / name).string());
    out << "P5\n" << width << ' ' << height << "\n255\n";
    for (Eigen::Index i = 0; i < D; ++i) {
      out.put(static_cast<char>(static_cast<unsigned char>(gray_level(alpha(n, i)))));
    }
    if (!out) throw std::runtime_error("error writing " + (path / name).string());
  }
}

}  // namespace depcam::eval
