#include "depcam/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "depcam/dpp_prior.hpp"
#include "depcam/expfam.hpp"
#include "depcam/manifold.hpp"
#include "depcam/rng.hpp"

namespace depcam {

namespace {

constexpr int kMaxHalvings = 20;
constexpr double kInitialStep = 0.5;
constexpr int kPredictRounds = 10;
constexpr double kPredictTolerance = 1e-8;
// Responsibilities at or below this are skipped in component-local and code
// objectives; a skipped term is bounded by kNegligible * |log p(x | W y)|.
constexpr double kNegligible = 1e-20;
// Backtracking stops once the first-order gain step * |g|^2 is below this
// fraction of the objective's magnitude: such probes only compare rounding.
constexpr double kRoundoff = 1e-13;

bool below_roundoff(double step, double grad_sq, double value) {
  return step * grad_sq <= kRoundoff * (1.0 + std::abs(value));
}

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Row-wise log-sum-exp normalization of log-weights, in place.
void normalize_log_rows(MatrixXd& logw) {
  for (Index n = 0; n < logw.rows(); ++n) {
    const double m = logw.row(n).maxCoeff();
    if (!std::isfinite(m)) {
      throw NumericalError("responsibilities: row " + std::to_string(n) +
                           " has no finite log-weight");
    }
    double s = 0.0;
    for (Index k = 0; k < logw.cols(); ++k) s += std::exp(logw(n, k) - m);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw NumericalError("responsibilities: degenerate normalizer in row " +
                           std::to_string(n));
    }
    for (Index k = 0; k < logw.cols(); ++k) {
      logw(n, k) = std::exp(logw(n, k) - m) / s;
    }
  }
}

VectorXd log_pi(const VectorXd& pi) {
  return pi.unaryExpr([](double p) {
    return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  });
}

// The slice of the data a single component sees: samples with nonzero
// responsibility, their codes and their weights.
struct ComponentView {
  MatrixXd X;
  MatrixXd Y;
  VectorXd r;

  ComponentView(const Eigen::Ref<const MatrixXd>& Xall,
                const Eigen::Ref<const MatrixXd>& Yall,
                const Eigen::Ref<const VectorXd>& rall) {
    std::vector<Index> rows;
    for (Index n = 0; n < rall.size(); ++n) {
      if (rall(n) > kNegligible) rows.push_back(n);
    }
    const auto M = static_cast<Index>(rows.size());
    X.resize(M, Xall.cols());
    Y.resize(M, Yall.cols());
    r.resize(M);
    for (Index m = 0; m < M; ++m) {
      X.row(m) = Xall.row(rows[static_cast<std::size_t>(m)]);
      Y.row(m) = Yall.row(rows[static_cast<std::size_t>(m)]);
      r(m) = rall(rows[static_cast<std::size_t>(m)]);
    }
  }

  // sum_n r_n log p(x_n | W y_n)
  double likelihood(const MatrixXd& W) const {
    if (r.size() == 0) return 0.0;
    const MatrixXd theta = Y * W.transpose();
    return r.dot(expfam::row_log_likelihoods(X, theta));
  }

  // Rows r_n (x_n + g'(W y_n)).
  MatrixXd weighted_residuals(const MatrixXd& W) const {
    MatrixXd theta = Y * W.transpose();
    MatrixXd e = X - theta.unaryExpr([](double t) { return expfam::mean_param(t); });
    return r.asDiagonal() * e;
  }
};

double prior_term(const std::vector<Component>& components,
                  const MixtureModel& model) {
  if (model.lambda == 0.0) return 0.0;
  const auto e = dpp::build_l_ensemble(components, model.xi, model.varrho);
  return model.lambda * dpp::log_det_prior(e);
}

double code_objective_impl(const Eigen::Ref<const VectorXd>& x,
                           const Eigen::Ref<const VectorXd>& y,
                           const Eigen::Ref<const VectorXd>& r,
                           const std::vector<MatrixXd>& transforms) {
  double s = 0.0;
  for (std::size_t k = 0; k < transforms.size(); ++k) {
    const double w = r(static_cast<Index>(k));
    if (w > kNegligible) s += w * expfam::log_likelihood(x, transforms[k] * y);
  }
  return s - 0.5 * y.squaredNorm();
}

VectorXd code_gradient_impl(const Eigen::Ref<const VectorXd>& x,
                            const Eigen::Ref<const VectorXd>& y,
                            const Eigen::Ref<const VectorXd>& r,
                            const std::vector<MatrixXd>& transforms) {
  VectorXd acc = VectorXd::Zero(y.size());
  for (std::size_t k = 0; k < transforms.size(); ++k) {
    const double w = r(static_cast<Index>(k));
    if (w > kNegligible) {
      const VectorXd e = x + expfam::log_partition_grad(transforms[k] * y);
      acc += w * (transforms[k].transpose() * e);
    }
  }
  return acc - y;
}

// Largest squared column norm of each transform. For W = U diag(Phi) with
// orthonormal U this is ||W||_2^2.
std::vector<double> column_norms_sq(const std::vector<MatrixXd>& transforms) {
  std::vector<double> out;
  out.reserve(transforms.size());
  for (const auto& w : transforms) {
    out.push_back(w.cols() == 0 ? 0.0 : w.colwise().squaredNorm().maxCoeff());
  }
  return out;
}

// Backtracking ascent on one code; returns the improved code. The first trial
// step is min(0.5, 1/L) with L = 1 + sum_k r_k ||W^k||^2 / 4, a Lipschitz
// bound for the code gradient.
VectorXd ascend_code(const Eigen::Ref<const VectorXd>& x, VectorXd y,
                     const Eigen::Ref<const VectorXd>& r,
                     const std::vector<MatrixXd>& transforms,
                     const std::vector<double>& norms_sq, int iters) {
  double curvature = 0.0;
  for (std::size_t k = 0; k < transforms.size(); ++k) {
    const double w = r(static_cast<Index>(k));
    if (w > kNegligible) curvature += w * norms_sq[k];
  }
  const double first_step = std::min(kInitialStep, 1.0 / (1.0 + 0.25 * curvature));

  double f = code_objective_impl(x, y, r, transforms);
  for (int it = 0; it < iters; ++it) {
    const VectorXd g = code_gradient_impl(x, y, r, transforms);
    const double g2 = g.squaredNorm();
    if (g2 == 0.0) break;
    double step = first_step;
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
      if (below_roundoff(step, g2, f)) break;
      VectorXd cand = y + step * g;
      const double fc = code_objective_impl(x, cand, r, transforms);
      if (fc >= f) {
        y = std::move(cand);
        f = fc;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return y;
}

void check_shapes(const Eigen::Ref<const MatrixXd>& X,
                  const Eigen::Ref<const MatrixXd>& Y,
                  const MixtureModel& model) {
  if (model.components.empty()) throw UsageError("model has no components");
  if (X.cols() != model.D()) {
    throw UsageError("data has " + std::to_string(X.cols()) +
                     " columns but the model expects " +
                     std::to_string(model.D()));
  }
  if (Y.rows() != X.rows() || Y.cols() != model.d()) {
    throw UsageError("code matrix has shape " + std::to_string(Y.rows()) + "x" +
                     std::to_string(Y.cols()) + ", expected " +
                     std::to_string(X.rows()) + "x" + std::to_string(model.d()));
  }
}

void check_state(const Eigen::Ref<const MatrixXd>& X, const LatentState& state,
                 const MixtureModel& model) {
  check_shapes(X, state.Y, model);
  if (state.R.rows() != X.rows() || state.R.cols() != model.K()) {
    throw UsageError("responsibility matrix has the wrong shape");
  }
}

struct ObjectiveValue {
  double value;
  bool jittered;
};

ObjectiveValue objective_impl(const Eigen::Ref<const MatrixXd>& X,
                              const LatentState& state,
                              const MixtureModel& model) {
  check_state(X, state, model);
  const VectorXd lp = log_pi(model.pi);
  double total = 0.0;
  for (Index k = 0; k < model.K(); ++k) {
    const ComponentView view(X, state.Y, state.R.col(k));
    if (view.r.size() == 0) continue;
    total += view.r.sum() * lp(k) +
             view.likelihood(materialize(model.components[static_cast<std::size_t>(k)]));
  }
  const double d = static_cast<double>(model.d());
  total += -0.5 * state.Y.squaredNorm() -
           static_cast<double>(X.rows()) * 0.5 * d *
               std::log(2.0 * std::numbers::pi);

  bool jittered = false;
  if (model.lambda != 0.0) {
    const auto e = dpp::build_l_ensemble(model.components, model.xi, model.varrho);
    jittered = e.jitter > 0.0;
    total += model.lambda * dpp::log_det_prior(e);
  }
  if (!std::isfinite(total)) throw NumericalError("objective is not finite");
  return {total, jittered};
}

}  // namespace

std::vector<MatrixXd> MixtureModel::transforms() const {
  std::vector<MatrixXd> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(materialize(c));
  return out;
}

void MixtureModel::validate(double basis_tol) const {
  if (components.empty()) throw UsageError("model: need at least one component");
  if (pi.size() != K()) throw UsageError("model: pi has the wrong length");
  if (!(xi >= 0.0 && varrho >= 0.0 && lambda >= 0.0)) {
    throw UsageError("model: xi, varrho and lambda must be non-negative");
  }
  for (const auto& c : components) {
    if (c.ambient_dim() != D() || c.latent_dim() != d() ||
        c.scales.size() != d()) {
      throw UsageError("model: components do not share D and d");
    }
    if (!c.scales.allFinite()) throw UsageError("model: non-finite scales");
    Basis::from_matrix(c.basis.matrix(), basis_tol);
  }
  if ((pi.array() < 0.0).any() || std::abs(pi.sum() - 1.0) > 1e-10) {
    throw UsageError("model: pi is not a probability vector");
  }
}

void FitConfig::validate() const {
  if (K < 1 || d < 1) throw UsageError("fit: K and d must be >= 1");
  if (!(epsilon > 0.0)) throw UsageError("fit: epsilon must be positive");
  if (max_outer < 1 || max_inner < 1 || y_step_iters < 0 || phi_sweeps < 0) {
    throw UsageError("fit: iteration limits must be positive");
  }
  if (!(lambda >= 0.0 && xi >= 0.0 && varrho >= 0.0)) {
    throw UsageError("fit: lambda, xi and varrho must be non-negative");
  }
}

namespace inference {

MatrixXd component_log_likelihoods(const Eigen::Ref<const MatrixXd>& X,
                                   const Eigen::Ref<const MatrixXd>& Y,
                                   const MixtureModel& model) {
  check_shapes(X, Y, model);
  MatrixXd out(X.rows(), model.K());
  for (Index k = 0; k < model.K(); ++k) {
    const MatrixXd theta =
        Y * materialize(model.components[static_cast<std::size_t>(k)]).transpose();
    out.col(k) = expfam::row_log_likelihoods(X, theta);
  }
  return out;
}

MatrixXd update_responsibilities(const Eigen::Ref<const MatrixXd>& X,
                                 const Eigen::Ref<const MatrixXd>& Y,
                                 const MixtureModel& model) {
  MatrixXd logw = component_log_likelihoods(X, Y, model);
  logw.rowwise() += log_pi(model.pi).transpose();
  normalize_log_rows(logw);
  return logw;
}

VectorXd update_pi(const Eigen::Ref<const MatrixXd>& R) {
  if (R.rows() == 0) throw UsageError("update_pi: no samples");
  VectorXd pi = R.colwise().sum().transpose();
  return pi / static_cast<double>(R.rows());
}

double objective(const Eigen::Ref<const MatrixXd>& X, const LatentState& state,
                 const MixtureModel& model) {
  return objective_impl(X, state, model).value;
}

double responsibility_entropy(const Eigen::Ref<const MatrixXd>& R) {
  double h = 0.0;
  for (Index k = 0; k < R.cols(); ++k) {
    for (Index n = 0; n < R.rows(); ++n) {
      const double r = R(n, k);
      if (r > 0.0) h -= r * std::log(r);
    }
  }
  return h;
}

double code_objective(const Eigen::Ref<const VectorXd>& x,
                      const Eigen::Ref<const VectorXd>& y,
                      const Eigen::Ref<const VectorXd>& r,
                      const std::vector<MatrixXd>& transforms) {
  return code_objective_impl(x, y, r, transforms);
}

VectorXd code_gradient(const Eigen::Ref<const VectorXd>& x,
                       const Eigen::Ref<const VectorXd>& y,
                       const Eigen::Ref<const VectorXd>& r,
                       const std::vector<MatrixXd>& transforms) {
  return code_gradient_impl(x, y, r, transforms);
}

MatrixXd update_Y(const Eigen::Ref<const MatrixXd>& X,
                  const Eigen::Ref<const MatrixXd>& R,
                  const MixtureModel& model,
                  const Eigen::Ref<const MatrixXd>& Y, int step_iters) {
  check_shapes(X, Y, model);
  const auto transforms = model.transforms();
  const auto norms_sq = column_norms_sq(transforms);
  MatrixXd out = Y;
  for (Index n = 0; n < X.rows(); ++n) {
    const VectorXd x = X.row(n).transpose();
    const VectorXd r = R.row(n).transpose();
    out.row(n) = ascend_code(x, Y.row(n).transpose(), r, transforms, norms_sq, step_iters)
                     .transpose();
  }
  return out;
}

MatrixXd upsilon_gradient(const Eigen::Ref<const MatrixXd>& X,
                          const LatentState& state, const MixtureModel& model,
                          Index k) {
  check_state(X, state, model);
  const auto& c = model.components.at(static_cast<std::size_t>(k));
  const ComponentView view(X, state.Y, state.R.col(k));
  const MatrixXd W = materialize(c);
  MatrixXd grad = view.weighted_residuals(W).transpose() * view.Y *
                  c.scales.asDiagonal();
  if (model.lambda != 0.0 && model.K() > 1) {
    const auto e = dpp::build_l_ensemble(model.components, model.xi, model.varrho);
    grad += model.lambda *
            dpp::grad_log_det_wrt_upsilon(model.components, e, k, model.varrho);
  }
  return grad;
}

double phi_coordinate_gradient(const Eigen::Ref<const MatrixXd>& X,
                               const LatentState& state,
                               const MixtureModel& model, Index k, Index i,
                               int subgradient_at_zero) {
  check_state(X, state, model);
  const auto& c = model.components.at(static_cast<std::size_t>(k));
  const ComponentView view(X, state.Y, state.R.col(k));
  const MatrixXd resid = view.weighted_residuals(materialize(c));
  const double lik = c.basis.matrix().col(i).dot(resid.transpose() * view.Y.col(i));
  return lik + model.lambda * dpp::grad_log_det_wrt_phi(c.scales, model.xi, i,
                                                        subgradient_at_zero);
}

Basis update_component_upsilon(const Eigen::Ref<const MatrixXd>& X,
                               const LatentState& state,
                               const MixtureModel& model, Index k) {
  const MatrixXd grad = upsilon_gradient(X, state, model, k);
  const auto& own = model.components[static_cast<std::size_t>(k)];
  const auto dir = manifold::project_to_tangent(own.basis, grad);

  const ComponentView view(X, state.Y, state.R.col(k));
  std::vector<Component> trial = model.components;
  auto local_objective = [&](const Basis& b) {
    trial[static_cast<std::size_t>(k)].basis = b;
    return view.likelihood(materialize(b, own.scales)) +
           prior_term(trial, model);
  };
  return manifold::line_search_geodesic(local_objective, own.basis, dir).basis;
}

Scales update_component_phi(const Eigen::Ref<const MatrixXd>& X,
                            const LatentState& state, const MixtureModel& model,
                            Index k, int sweeps) {
  check_state(X, state, model);
  const ComponentView view(X, state.Y, state.R.col(k));
  std::vector<Component> trial = model.components;
  auto& mine = trial[static_cast<std::size_t>(k)];
  const MatrixXd& U = mine.basis.matrix();
  const Index M = view.X.rows();
  const Index D = view.X.cols();

  // theta = Y W^T for the current scales; a step on coordinate i moves it by
  // delta * y_i u_i^T.
  Scales phi = mine.scales;
  MatrixXd theta = view.Y * materialize(mine.basis, phi).transpose();

  auto shifted_likelihood = [&](Index i, double delta) {
    double total = 0.0;
    for (Index n = 0; n < M; ++n) {
      const double a = delta * view.Y(n, i);
      double row = 0.0;
      for (Index j = 0; j < D; ++j) {
        const double t = theta(n, j) + a * U(j, i);
        row += view.X(n, j) * t + expfam::log_partition(t);
      }
      total += view.r(n) * row;
    }
    return total;
  };
  auto local_objective = [&](Index i, double v) {
    const double saved = mine.scales(i);
    mine.scales = phi;
    mine.scales(i) = v;
    const double f = shifted_likelihood(i, v - phi(i)) + prior_term(trial, model);
    mine.scales(i) = saved;
    return f;
  };

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (Index i = 0; i < phi.size(); ++i) {
      // Coordinate gradient and (negated) curvature of the likelihood part.
      double lik_grad = 0.0;
      double curvature = 0.0;
      for (Index n = 0; n < M; ++n) {
        const double y = view.Y(n, i);
        double g = 0.0, h = 0.0;
        for (Index j = 0; j < D; ++j) {
          const double a = expfam::mean_param(theta(n, j));
          g += U(j, i) * (view.X(n, j) - a);
          h += U(j, i) * U(j, i) * a * (1.0 - a);
        }
        lik_grad += view.r(n) * y * g;
        curvature += view.r(n) * y * y * h;
      }
      const double first_step =
          curvature > 1.0 / kInitialStep ? 1.0 / curvature : kInitialStep;

      const double start = phi(i);
      const double current = local_objective(i, start);
      double best_value = current;
      double best_coord = start;
      bool crossed_zero = false;
      auto try_coord = [&](double v) {
        const double f = local_objective(i, v);
        if (f > best_value) {
          best_value = f;
          best_coord = v;
        }
        return f;
      };

      // The coordinate objective is concave; at zero with |lik_grad| <=
      // lambda * xi the subdifferential contains 0 and no step improves.
      std::vector<int> subgradients;
      if (start > 0.0) {
        subgradients = {1};
      } else if (start < 0.0) {
        subgradients = {-1};
      } else if (std::abs(lik_grad) > model.lambda * model.xi) {
        subgradients = {-1, 0, 1};
      }
      for (int s : subgradients) {
        const double g =
            lik_grad + model.lambda * dpp::grad_log_det_wrt_phi(phi, model.xi, i, s);
        if (g == 0.0) continue;
        double step = first_step;
        for (int h = 0; h <= kMaxHalvings; ++h, step *= 0.5) {
          if (below_roundoff(step, g * g, current)) break;
          const double v = start + step * g;
          if (start != 0.0 && (v > 0.0) != (start > 0.0)) crossed_zero = true;
          if (try_coord(v) >= current) break;
        }
      }
      // The l1 kink sits at zero; a step that jumps over it may do better by
      // stopping on it.
      if (crossed_zero) try_coord(0.0);

      if (best_coord != start) {
        const double delta = best_coord - start;
        for (Index j = 0; j < D; ++j) {
          theta.col(j) += (delta * U(j, i)) * view.Y.col(i);
        }
        phi(i) = best_coord;
      }
    }
  }
  return phi;
}

FitResult initialize(const BinaryDataset& data, const FitConfig& cfg) {
  cfg.validate();
  if (data.size() < 1) throw UsageError("fit: dataset is empty");
  if (data.dims() < cfg.d) {
    throw UsageError("fit: latent dimension d=" + std::to_string(cfg.d) +
                     " exceeds data dimension D=" + std::to_string(data.dims()));
  }
  const SeedStream root(cfg.seed);

  FitResult out;
  MixtureModel& model = out.model;
  model.xi = cfg.xi;
  model.varrho = cfg.varrho;
  model.lambda = cfg.lambda;

  auto pi_rng = root.split("pi").engine();
  std::exponential_distribution<double> gamma1(1.0);
  model.pi.resize(cfg.K);
  for (int k = 0; k < cfg.K; ++k) model.pi(k) = gamma1(pi_rng);
  model.pi /= model.pi.sum();

  const SeedStream comp_seeds = root.split("components");
  for (int k = 0; k < cfg.K; ++k) {
    model.components.push_back(init_component(
        data.dims(), cfg.d, comp_seeds.split(static_cast<std::uint64_t>(k)).seed()));
  }

  // One code ascent pass from the prior mode: at Y = 0 every likelihood
  // gradient w.r.t. W vanishes.
  out.state.Y = MatrixXd::Zero(data.size(), cfg.d);
  out.state.R = update_responsibilities(data.X, out.state.Y, model);
  out.state.Y = update_Y(data.X, out.state.R, model, out.state.Y, cfg.y_step_iters);
  out.state.R = update_responsibilities(data.X, out.state.Y, model);
  out.report.seed = cfg.seed;
  return out;
}

FitResult run_em(const BinaryDataset& data, const FitConfig& cfg,
                 FitResult start) {
  cfg.validate();
  FitResult res = std::move(start);
  MixtureModel& model = res.model;
  LatentState& state = res.state;
  FitReport& report = res.report;
  report = FitReport{};
  report.seed = cfg.seed;
  model.lambda = cfg.lambda;
  model.xi = cfg.xi;
  model.varrho = cfg.varrho;
  const auto& X = data.X;

  auto eval = [&]() {
    const auto v = objective_impl(X, state, model);
    if (v.jittered) ++report.jitter_events;
    return v.value;
  };

  try {
    double current = eval();
    auto record_step = [&]() {
      const double after = eval();
      const double change = after - current;
      if (report.accepted_steps == 0 || change < report.worst_step_change) {
        report.worst_step_change = change;
      }
      ++report.accepted_steps;
      current = after;
    };

    double outer_new = current;
    for (int outer = 0; outer < cfg.max_outer; ++outer) {
      const double outer_old = outer_new;
      ++report.outer_iters;

      // M-step
      model.pi = update_pi(state.R);

      // E-step
      double inner_new = eval();
      current = inner_new;
      for (int inner = 0; inner < cfg.max_inner; ++inner) {
        const double inner_old = inner_new;
        ++report.inner_iters;

        state.R = update_responsibilities(X, state.Y, model);
        current = eval();
        for (Eigen::Index k = 0; k < model.K(); ++k) {
          auto& comp = model.components[static_cast<std::size_t>(k)];
          comp.basis = update_component_upsilon(X, state, model, k);
          record_step();
          comp.scales = update_component_phi(X, state, model, k, cfg.phi_sweeps);
          record_step();
        }
        state.Y = update_Y(X, state.R, model, state.Y, cfg.y_step_iters);
        record_step();

        inner_new = current;
        report.objective_trace.push_back(inner_new);
        report.trace_outer_index.push_back(outer);
        report.bound_trace.push_back(inner_new + responsibility_entropy(state.R));
        if (std::abs(inner_new - inner_old) < cfg.epsilon) break;
      }

      outer_new = inner_new;
      if (std::abs(outer_new - outer_old) < cfg.epsilon) {
        report.converged = true;
        break;
      }
    }
  } catch (const NumericalError& e) {
    if (report.objective_trace.empty()) report.objective_trace.push_back(NAN);
    throw FitAborted(std::string("fit aborted: ") + e.what(), report);
  }
  return res;
}

FitResult fit(const BinaryDataset& data, const FitConfig& cfg) {
  return run_em(data, cfg, initialize(data, cfg));
}

Prediction predict(const Eigen::Ref<const VectorXd>& x,
                   const MixtureModel& model, int step_iters) {
  if (model.components.empty()) throw UsageError("predict: empty model");
  if (x.size() != model.D()) {
    throw UsageError("predict: sample has " + std::to_string(x.size()) +
                     " features, model expects " + std::to_string(model.D()));
  }
  const auto transforms = model.transforms();
  const auto norms_sq = column_norms_sq(transforms);
  const VectorXd lp = log_pi(model.pi);

  Prediction out;
  out.posterior = model.pi;
  out.y_star = VectorXd::Zero(model.d());
  for (int round = 0; round < kPredictRounds; ++round) {
    out.y_star =
        ascend_code(x, out.y_star, out.posterior, transforms, norms_sq, step_iters);
    MatrixXd logw(1, model.K());
    for (Index k = 0; k < model.K(); ++k) {
      logw(0, k) = lp(k) + expfam::log_likelihood(
                               x, transforms[static_cast<std::size_t>(k)] * out.y_star);
    }
    normalize_log_rows(logw);
    const VectorXd next = logw.row(0).transpose();
    const double change = (next - out.posterior).cwiseAbs().maxCoeff();
    out.posterior = next;
    if (change < kPredictTolerance) break;
  }
  Index best = 0;
  for (Index k = 1; k < model.K(); ++k) {
    if (out.posterior(k) > out.posterior(best)) best = k;
  }
  out.z_star = best;
  return out;
}

double predictive_log_likelihood(const Eigen::Ref<const VectorXd>& x,
                                 const Eigen::Ref<const VectorXd>& y,
                                 const MixtureModel& model) {
  const VectorXd lp = log_pi(model.pi);
  VectorXd terms(model.K());
  for (Index k = 0; k < model.K(); ++k) {
    terms(k) = lp(k) + expfam::log_likelihood(
                           x, materialize(model.components[static_cast<std::size_t>(k)]) * y);
  }
  const double m = terms.maxCoeff();
  return m + std::log((terms.array() - m).exp().sum());
}

}  // namespace inference
}  // namespace depcam
