#ifndef DEPCAM_INFERENCE_HPP
#define DEPCAM_INFERENCE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "depcam/components.hpp"
#include "depcam/data.hpp"
#include "depcam/errors.hpp"

namespace depcam {

struct MixtureModel {
  std::vector<Component> components;
  Eigen::VectorXd pi;
  double xi = 0.1;
  double varrho = 0.1;
  double lambda = 10.0;

  Eigen::Index K() const { return static_cast<Eigen::Index>(components.size()); }
  Eigen::Index d() const { return components.front().latent_dim(); }
  Eigen::Index D() const { return components.front().ambient_dim(); }

  // Materialized W^k = U^k diag(Phi^k) for every component.
  std::vector<Eigen::MatrixXd> transforms() const;

  // Throws UsageError on shape mismatches, a pi off the simplex (1e-10) or
  // negative hyperparameters, and DegenerateInputError on a non-orthonormal
  // basis (checked at `basis_tol`).
  void validate(double basis_tol = Basis::kTolerance) const;
};

// MAP codes Y (N x d) shared by all components, and responsibilities R
// (N x K), R(n, k) = q(z_n = k).
struct LatentState {
  Eigen::MatrixXd Y;
  Eigen::MatrixXd R;
};

struct FitConfig {
  int K = 3;
  int d = 4;
  double lambda = 10.0;
  double xi = 0.1;
  double varrho = 0.1;
  double epsilon = 1e-5;
  int max_outer = 100;
  int max_inner = 50;
  int y_step_iters = 5;
  int phi_sweeps = 2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FitReport {
  // Objective after every inner iteration, with the outer iteration it
  // belongs to.
  std::vector<double> objective_trace;
  std::vector<int> trace_outer_index;
  // objective + entropy of R at the same points. Every update maximizes this
  // bound or does not decrease it, so the sequence is non-decreasing up to
  // rounding; objective_trace alone can drop at a responsibility update.
  std::vector<double> bound_trace;
  int outer_iters = 0;
  int inner_iters = 0;
  bool converged = false;
  int jitter_events = 0;
  std::uint64_t seed = 0;

  // Bookkeeping over every accepted basis / scales / code update:
  // objective_after - objective_before, minimized over steps.
  long accepted_steps = 0;
  double worst_step_change = 0.0;

  double final_objective() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

struct FitResult {
  MixtureModel model;
  LatentState state;
  FitReport report;
};

// Raised when the fit hits a numerical failure; carries what was done so far.
class FitAborted : public NumericalError {
 public:
  FitAborted(const std::string& what, FitReport partial)
      : NumericalError(what), report_(std::move(partial)) {}
  const FitReport& report() const { return report_; }

 private:
  FitReport report_;
};

namespace inference {

// log p(x_n | z_n = k, y_n) for all n, k.
Eigen::MatrixXd component_log_likelihoods(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& Y, const MixtureModel& model);

Eigen::MatrixXd update_responsibilities(
    const Eigen::Ref<const Eigen::MatrixXd>& X,
    const Eigen::Ref<const Eigen::MatrixXd>& Y, const MixtureModel& model);

Eigen::VectorXd update_pi(const Eigen::Ref<const Eigen::MatrixXd>& R);

//   sum_n sum_k R_nk [log pi_k + log p(x_n | W^k y_n)]
// + sum_n log N(y_n; 0, I) + lambda * log det L(W)
double objective(const Eigen::Ref<const Eigen::MatrixXd>& X,
                 const LatentState& state, const MixtureModel& model);

// -sum_n sum_k R_nk log R_nk
double responsibility_entropy(const Eigen::Ref<const Eigen::MatrixXd>& R);

// Per-sample code objective -||y||^2/2 + sum_k r_k log p(x | W^k y) and its
// gradient. Exposed for gradient checks.
double code_objective(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const Eigen::Ref<const Eigen::VectorXd>& r,
                      const std::vector<Eigen::MatrixXd>& transforms);
Eigen::VectorXd code_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                              const Eigen::Ref<const Eigen::VectorXd>& y,
                              const Eigen::Ref<const Eigen::VectorXd>& r,
                              const std::vector<Eigen::MatrixXd>& transforms);

// Backtracking gradient ascent on each code, up to 20 halvings from a first
// step of min(0.5, 1/L), L = 1 + sum_k R_nk ||W^k||_2^2 / 4.
Eigen::MatrixXd update_Y(const Eigen::Ref<const Eigen::MatrixXd>& X,
                         const Eigen::Ref<const Eigen::MatrixXd>& R,
                         const MixtureModel& model,
                         const Eigen::Ref<const Eigen::MatrixXd>& Y,
                         int step_iters = 5);

// Euclidean gradient of the objective w.r.t. the entries of U^k (prior term
// included when lambda > 0), before tangent projection.
Eigen::MatrixXd upsilon_gradient(const Eigen::Ref<const Eigen::MatrixXd>& X,
                                 const LatentState& state,
                                 const MixtureModel& model, Eigen::Index k);

// d objective / d Phi^k_i at a nonzero coordinate (at zero the prior part
// uses `subgradient_at_zero`).
double phi_coordinate_gradient(const Eigen::Ref<const Eigen::MatrixXd>& X,
                               const LatentState& state,
                               const MixtureModel& model, Eigen::Index k,
                               Eigen::Index i, int subgradient_at_zero = 0);

// Projected gradient plus geodesic line search for component k's basis.
Basis update_component_upsilon(const Eigen::Ref<const Eigen::MatrixXd>& X,
                               const LatentState& state,
                               const MixtureModel& model, Eigen::Index k);

// Coordinate-wise subgradient ascent on Phi^k. Backtracking starts from
// min(0.5, 1/h), h the coordinate curvature of the likelihood part. At zero
// the three subgradient choices are tried, plus a stop on zero when a step
// crosses it.
Scales update_component_phi(const Eigen::Ref<const Eigen::MatrixXd>& X,
                            const LatentState& state, const MixtureModel& model,
                            Eigen::Index k, int sweeps = 2);

// Random start: pi ~ flat Dirichlet, random components, Y from one code
// ascent pass started at 0, R from Bayes.
FitResult initialize(const BinaryDataset& data, const FitConfig& cfg);

// Variational EM from the given starting point. `start.report` is ignored.
FitResult run_em(const BinaryDataset& data, const FitConfig& cfg,
                 FitResult start);

FitResult fit(const BinaryDataset& data, const FitConfig& cfg);

struct Prediction {
  Eigen::Index z_star = 0;
  Eigen::VectorXd posterior;
  Eigen::VectorXd y_star;
};

// Alternates code ascent and posterior updates (at most 10 rounds, stop when
// the posterior moves by < 1e-8). Ties in the argmax go to the lowest index.
Prediction predict(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const MixtureModel& model, int step_iters = 5);

// log sum_k pi_k p(x | W^k y) at the supplied code.
double predictive_log_likelihood(const Eigen::Ref<const Eigen::VectorXd>& x,
                                 const Eigen::Ref<const Eigen::VectorXd>& y,
                                 const MixtureModel& model);

}  // namespace inference
}  // namespace depcam

#endif  // DEPCAM_INFERENCE_HPP
