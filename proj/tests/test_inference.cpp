#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "depcam/data.hpp"
#include "depcam/dpp_prior.hpp"
#include "depcam/errors.hpp"
#include "depcam/inference.hpp"
#include "depcam/manifold.hpp"
#include "oracles.hpp"

using namespace depcam;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MixtureModel random_model(int K, int D, int d, std::mt19937_64& rng,
                          double lambda = 0.0, double scale = 1.5) {
  std::uniform_real_distribution<double> s(-scale, scale);
  std::uniform_real_distribution<double> p(0.2, 1.0);
  MixtureModel m;
  m.lambda = lambda;
  m.xi = 0.1;
  m.varrho = 0.3;
  m.pi.resize(K);
  for (int k = 0; k < K; ++k) {
    VectorXd phi(d);
    for (int i = 0; i < d; ++i) phi(i) = s(rng);
    m.components.push_back({Basis::from_matrix(oracle::random_orthonormal(D, d, rng)), phi});
    m.pi(k) = p(rng);
  }
  m.pi /= m.pi.sum();
  return m;
}

LatentState random_state(const MatrixXd& X, const MixtureModel& m, std::mt19937_64& rng) {
  LatentState st;
  st.Y = oracle::random_matrix(X.rows(), m.d(), rng, 0.8);
  st.R = inference::update_responsibilities(X, st.Y, m);
  return st;
}

// Direct, term-by-term evaluation of the training objective.
double objective_by_definition(const MatrixXd& X, const LatentState& st,
                               const MixtureModel& m) {
  double total = 0.0;
  for (Eigen::Index n = 0; n < X.rows(); ++n) {
    for (Eigen::Index k = 0; k < m.K(); ++k) {
      const MatrixXd W = m.components[static_cast<std::size_t>(k)].basis.matrix() *
                         m.components[static_cast<std::size_t>(k)].scales.asDiagonal();
      const VectorXd theta = W * st.Y.row(n).transpose();
      double ll = 0.0;
      for (Eigen::Index j = 0; j < X.cols(); ++j) ll += oracle::bernoulli_log_pmf(X(n, j), theta(j));
      total += st.R(n, k) * (std::log(m.pi(k)) + ll);
    }
    total += -0.5 * st.Y.row(n).squaredNorm() -
             0.5 * static_cast<double>(m.d()) * std::log(2.0 * std::numbers::pi);
  }
  if (m.lambda != 0.0) {
    const auto e = dpp::build_l_ensemble(m.components, m.xi, m.varrho);
    total += m.lambda * std::log(e.regularized().determinant());
  }
  return total;
}

}  // namespace

TEST_CASE("responsibilities") {
  std::mt19937_64 rng(1);
  const MatrixXd X = oracle::random_binary(6, 5, rng);

  auto m = random_model(3, 5, 2, rng);
  m.components[1] = m.components[0];
  m.components[2] = m.components[0];
  m.pi = VectorXd::Constant(3, 1.0 / 3.0);
  const MatrixXd Y = oracle::random_matrix(6, 2, rng);
  const MatrixXd R = inference::update_responsibilities(X, Y, m);
  CHECK((R.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-15);

  auto two = random_model(2, 5, 2, rng);
  two.pi << 1.0, 0.0;
  const MatrixXd R2 = inference::update_responsibilities(X, Y, two);
  CHECK(R2.col(0) == VectorXd::Ones(6));
  CHECK(R2.col(1) == VectorXd::Zero(6));
}

TEST_CASE("responsibilities match explicit Bayes") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_model(2, 4, 2, rng);
    const MatrixXd X = oracle::random_binary(1, 4, rng);
    const MatrixXd Y = oracle::random_matrix(1, 2, rng);
    const MatrixXd R = inference::update_responsibilities(X, Y, m);
    double joint[2];
    for (int k = 0; k < 2; ++k) {
      const MatrixXd W = m.components[static_cast<std::size_t>(k)].basis.matrix() *
                         m.components[static_cast<std::size_t>(k)].scales.asDiagonal();
      const VectorXd theta = W * Y.row(0).transpose();
      double p = m.pi(k);
      for (int j = 0; j < 4; ++j) p *= std::exp(oracle::bernoulli_log_pmf(X(0, j), theta(j)));
      joint[k] = p;
    }
    CHECK(std::abs(R(0, 0) - joint[0] / (joint[0] + joint[1])) < 1e-12);
    CHECK(std::abs(R(0, 1) - joint[1] / (joint[0] + joint[1])) < 1e-12);
  }
}

TEST_CASE("responsibilities are row-stochastic for extreme logits") {
  std::mt19937_64 rng(3);
  auto m = random_model(3, 8, 3, rng, 0.0, 200.0);
  const MatrixXd X = oracle::random_binary(10, 8, rng);
  const MatrixXd R = inference::update_responsibilities(X, oracle::random_matrix(10, 3, rng, 5.0), m);
  CHECK(R.allFinite());
  CHECK((R.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
  CHECK(R.minCoeff() >= 0.0);
}

TEST_CASE("update_pi") {
  MatrixXd onehot = MatrixXd::Zero(4, 3);
  onehot.col(0).setOnes();
  CHECK(inference::update_pi(onehot) == (VectorXd(3) << 1, 0, 0).finished());
  const MatrixXd uniform = MatrixXd::Constant(5, 4, 0.25);
  CHECK((inference::update_pi(uniform).array() - 0.25).abs().maxCoeff() < 1e-15);

  // Maximizer of sum_nk R_nk log pi_k on the simplex by a dense grid.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 5; ++t) {
    MatrixXd R(5, 2);
    for (int n = 0; n < 5; ++n) {
      R(n, 0) = u(rng);
      R(n, 1) = 1.0 - R(n, 0);
    }
    const VectorXd n_k = R.colwise().sum().transpose();
    double best_p = 0.0, best_v = -1e300;
    for (int i = 1; i < 1000000; ++i) {
      const double p = i / 1000000.0;
      const double v = n_k(0) * std::log(p) + n_k(1) * std::log(1.0 - p);
      if (v > best_v) {
        best_v = v;
        best_p = p;
      }
    }
    const VectorXd pi = inference::update_pi(R);
    CHECK(std::abs(pi(0) - best_p) < 1e-6);
    CHECK(std::abs(pi.sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("objective") {
  std::mt19937_64 rng(5);
  const MatrixXd X = oracle::random_binary(3, 4, rng);
  auto m = random_model(2, 4, 2, rng, 2.0);
  const auto st = random_state(X, m, rng);
  CHECK(inference::objective(X, st, m) ==
        doctest::Approx(objective_by_definition(X, st, m)).epsilon(1e-12));

  auto flat = m;
  flat.lambda = 0.0;
  const auto e = dpp::build_l_ensemble(m.components, m.xi, m.varrho);
  CHECK(inference::objective(X, st, flat) ==
        doctest::Approx(inference::objective(X, st, m) - 2.0 * dpp::log_det_prior(e))
            .epsilon(1e-13));
  CHECK(inference::objective(X, st, flat) ==
        doctest::Approx(objective_by_definition(X, st, flat)).epsilon(1e-12));

  // At the origin every bit has probability 1/2.
  LatentState origin{MatrixXd::Zero(3, 2), st.R};
  const double lp = (st.R.col(0).sum()) * std::log(m.pi(0)) + (st.R.col(1).sum()) * std::log(m.pi(1));
  CHECK(inference::objective(X, origin, flat) ==
        doctest::Approx(-3.0 * 4.0 * std::log(2.0) + lp - 3.0 * std::log(2.0 * std::numbers::pi))
            .epsilon(1e-13));
}

TEST_CASE("code gradient matches finite differences") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const int K = 1 + t % 3, D = 3 + t % 6, d = 1 + t % 3;
    const auto m = random_model(K, D, d, rng);
    const VectorXd x = oracle::random_binary(D, 1, rng);
    VectorXd r = oracle::random_matrix(K, 1, rng).cwiseAbs();
    r /= r.sum();
    const VectorXd y = oracle::random_matrix(d, 1, rng);
    const auto transforms = m.transforms();
    const VectorXd g = inference::code_gradient(x, y, r, transforms);
    const MatrixXd num = oracle::matrix_gradient(
        [&](const MatrixXd& v) { return inference::code_objective(x, v, r, transforms); }, y);
    CHECK(oracle::relative_error(g, num) < 1e-5);
  }
}

TEST_CASE("update_Y ascends") {
  std::mt19937_64 rng(7);
  const MatrixXd X = oracle::random_binary(8, 6, rng);
  const auto m = random_model(2, 6, 2, rng);
  const MatrixXd Y0 = MatrixXd::Zero(8, 2);
  const MatrixXd R = inference::update_responsibilities(X, Y0, m);
  const MatrixXd Y1 = inference::update_Y(X, R, m, Y0, 5);
  const auto transforms = m.transforms();
  for (Eigen::Index n = 0; n < 8; ++n) {
    const VectorXd x = X.row(n).transpose(), r = R.row(n).transpose();
    const double before = inference::code_objective(x, Y0.row(n).transpose(), r, transforms);
    const double after = inference::code_objective(x, Y1.row(n).transpose(), r, transforms);
    if (inference::code_gradient(x, Y0.row(n).transpose(), r, transforms).norm() > 0.0) {
      CHECK(after > before);
    }
  }
}

TEST_CASE("update_Y keeps a stationary code") {
  // x balanced against W: W^T (x - 1/2) = 0 with all logits zero at y = 0.
  MatrixXd U(4, 1);
  U << 0.5, 0.5, 0.5, 0.5;
  MixtureModel m;
  m.components.push_back({Basis::from_matrix(U), VectorXd::Constant(1, 2.0)});
  m.pi = VectorXd::Ones(1);
  MatrixXd X(1, 4);
  X << 1, 0, 1, 0;
  const MatrixXd Y = MatrixXd::Zero(1, 1);
  const MatrixXd R = MatrixXd::Ones(1, 1);
  CHECK(inference::update_Y(X, R, m, Y, 5) == Y);
}

TEST_CASE("upsilon gradient matches finite differences") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 12; ++t) {
    const int K = 2 + t % 2, D = 5 + t % 4, d = 1 + t % 3;
    const double lambda = t % 2 == 0 ? 0.0 : 3.0;
    const auto m = random_model(K, D, d, rng, lambda);
    const MatrixXd X = oracle::random_binary(6 + t % 5, D, rng);
    const auto st = random_state(X, m, rng);
    for (int k = 0; k < K; ++k) {
      const MatrixXd g = inference::upsilon_gradient(X, st, m, k);
      auto f = [&](const MatrixXd& u) {
        auto trial = m;
        trial.components[static_cast<std::size_t>(k)].basis = Basis::unchecked(u);
        return inference::objective(X, st, trial);
      };
      const MatrixXd num =
          oracle::matrix_gradient(f, m.components[static_cast<std::size_t>(k)].basis.matrix());
      if (lambda == 0.0) {
        CHECK(oracle::relative_error(g, num) < 1e-5);
      } else {
        const auto& b = m.components[static_cast<std::size_t>(k)].basis;
        CHECK(oracle::relative_error(manifold::project_to_tangent(b, g).direction,
                                     manifold::project_to_tangent(b, num).direction) < 1e-5);
      }
    }
  }
}

TEST_CASE("phi coordinate gradient matches finite differences") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 12; ++t) {
    const int K = 1 + t % 3, D = 4 + t % 5, d = 1 + t % 3;
    const auto m = random_model(K, D, d, rng, t % 2 == 0 ? 0.0 : 2.0);
    const MatrixXd X = oracle::random_binary(5 + t % 6, D, rng);
    const auto st = random_state(X, m, rng);
    for (int k = 0; k < K; ++k) {
      for (int i = 0; i < d; ++i) {
        auto f = [&](double v) {
          auto trial = m;
          trial.components[static_cast<std::size_t>(k)].scales(i) = v;
          return inference::objective(X, st, trial);
        };
        const double v0 = m.components[static_cast<std::size_t>(k)].scales(i);
        REQUIRE(v0 != 0.0);
        CHECK(inference::phi_coordinate_gradient(X, st, m, k, i) ==
              doctest::Approx(oracle::central_difference(f, v0)).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("upsilon update") {
  std::mt19937_64 rng(10);
  const MatrixXd X = oracle::random_binary(10, 6, rng);

  SUBCASE("component without data stays put") {
    auto m = random_model(2, 6, 2, rng);
    LatentState st{oracle::random_matrix(10, 2, rng), MatrixXd::Zero(10, 2)};
    st.R.col(0).setOnes();
    CHECK(inference::upsilon_gradient(X, st, m, 1).isZero(0.0));
    CHECK(inference::update_component_upsilon(X, st, m, 1).matrix() ==
          m.components[1].basis.matrix());
  }

  SUBCASE("never decreases the objective") {
    for (int t = 0; t < 5; ++t) {
      auto m = random_model(3, 6, 2, rng, t % 2 == 0 ? 0.0 : 5.0);
      const auto st = random_state(X, m, rng);
      for (int k = 0; k < 3; ++k) {
        const double before = inference::objective(X, st, m);
        m.components[static_cast<std::size_t>(k)].basis =
            inference::update_component_upsilon(X, st, m, k);
        CHECK(inference::objective(X, st, m) >= before - 1e-9);
        CHECK(m.components[static_cast<std::size_t>(k)].basis.orthonormality_error() < 1e-8);
      }
    }
  }

  SUBCASE("repulsion pushes near-duplicates apart") {
    auto m = random_model(2, 6, 2, rng, 50.0);
    const MatrixXd bump = manifold::project_to_tangent(
                              m.components[0].basis, oracle::random_matrix(6, 2, rng))
                              .direction;
    m.components[1] = m.components[0];
    m.components[1].basis = manifold::geodesic(m.components[0].basis, {bump}, 1e-3);
    const auto st = random_state(X, m, rng);
    const double before = dpp::similarity(m.components[0].basis, m.components[1].basis, m.varrho);
    m.components[1].basis = inference::update_component_upsilon(X, st, m, 1);
    const double after = dpp::similarity(m.components[0].basis, m.components[1].basis, m.varrho);
    CHECK(after < before);
  }
}

TEST_CASE("phi update") {
  std::mt19937_64 rng(11);

  SUBCASE("never decreases the objective") {
    const MatrixXd X = oracle::random_binary(12, 6, rng);
    for (int t = 0; t < 6; ++t) {
      auto m = random_model(2, 6, 3, rng, t % 2 == 0 ? 0.0 : 5.0);
      if (t == 1) m.components[0].scales(1) = 0.0;
      const auto st = random_state(X, m, rng);
      for (int k = 0; k < 2; ++k) {
        const double before = inference::objective(X, st, m);
        m.components[static_cast<std::size_t>(k)].scales =
            inference::update_component_phi(X, st, m, k, 2);
        CHECK(inference::objective(X, st, m) >= before - 1e-9);
      }
    }
  }

  SUBCASE("heavy penalty with no signal shrinks to zero") {
    const MatrixXd X = oracle::random_binary(4, 5, rng);
    auto m = random_model(1, 5, 2, rng, 1000.0);
    LatentState st{MatrixXd::Constant(4, 2, 1e-6), MatrixXd::Ones(4, 1)};
    VectorXd phi = m.components[0].scales;
    for (int it = 0; it < 5; ++it) {
      m.components[0].scales = inference::update_component_phi(X, st, m, 0, 2);
    }
    CHECK(m.components[0].scales.cwiseAbs().maxCoeff() < 1e-6);
    CHECK(phi.cwiseAbs().minCoeff() > 0.1);
  }

  SUBCASE("unpenalized coordinate reaches the grid maximizer") {
    // d = 1: the objective in Phi is one-dimensional and concave.
    const MatrixXd X = oracle::random_binary(6, 4, rng);
    auto m = random_model(1, 4, 1, rng, 0.0);
    m.xi = 0.0;
    m.components[0].scales(0) = 0.3;
    LatentState st{oracle::random_matrix(6, 1, rng), MatrixXd::Ones(6, 1)};
    for (int it = 0; it < 200; ++it) {
      m.components[0].scales = inference::update_component_phi(X, st, m, 0, 2);
    }
    auto f = [&](double v) {
      auto trial = m;
      trial.components[0].scales(0) = v;
      return inference::objective(X, st, trial);
    };
    double best_v = 0.0, best_f = -1e300;
    for (int i = -200000; i <= 200000; ++i) {
      const double v = i * 1e-4;
      const double fv = f(v);
      if (fv > best_f) {
        best_f = fv;
        best_v = v;
      }
    }
    CHECK(std::abs(m.components[0].scales(0) - best_v) < 1e-3);
  }
}

TEST_CASE("fit invariants on a small problem") {
  data::SyntheticConfig sc;
  sc.copies = 6;
  sc.seed = 2;
  const auto ds = data::generate_synthetic(sc).noisy;
  FitConfig cfg;
  cfg.seed = 4;
  cfg.max_outer = 6;
  cfg.max_inner = 10;
  const auto res = inference::fit(ds, cfg);

  CHECK_FALSE(res.report.objective_trace.empty());
  CHECK(res.report.objective_trace.size() == res.report.bound_trace.size());
  CHECK(res.report.worst_step_change >= -1e-9);
  CHECK(res.report.accepted_steps > 0);
  for (std::size_t i = 1; i < res.report.bound_trace.size(); ++i) {
    CHECK(res.report.bound_trace[i] >= res.report.bound_trace[i - 1] - 1e-9);
  }
  CHECK((res.state.R.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-10);
  CHECK(res.state.R.minCoeff() >= 0.0);
  CHECK(std::abs(res.model.pi.sum() - 1.0) < 1e-10);
  CHECK_NOTHROW(res.model.validate());
  CHECK(res.report.outer_iters <= 6);
  CHECK(res.report.inner_iters <= 60);

  const auto again = inference::fit(ds, cfg);
  CHECK(again.report.objective_trace == res.report.objective_trace);
  CHECK(again.state.Y == res.state.Y);
}

TEST_CASE("fit rejects bad input") {
  BinaryDataset ds;
  ds.X = MatrixXd::Zero(5, 3);
  FitConfig cfg;
  cfg.d = 4;
  CHECK_THROWS_AS(inference::fit(ds, cfg), UsageError);
  cfg.d = 2;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(inference::fit(ds, cfg), UsageError);
  cfg.epsilon = 1e-5;
  cfg.K = 0;
  CHECK_THROWS_AS(inference::fit(ds, cfg), UsageError);
  cfg.K = 2;
  cfg.lambda = -1.0;
  CHECK_THROWS_AS(inference::fit(ds, cfg), UsageError);
}

TEST_CASE("relabeled continuation is equivariant") {
  data::SyntheticConfig sc;
  sc.copies = 5;
  sc.seed = 9;
  const auto ds = data::generate_synthetic(sc).noisy;

  FitConfig cfg;
  cfg.K = 2;
  cfg.d = 2;
  cfg.lambda = 0.0;
  cfg.seed = 12;
  cfg.max_outer = 3;
  cfg.max_inner = 5;
  const auto start = inference::initialize(ds, cfg);
  auto swapped = start;
  for (int k = 0; k < 2; ++k) {
    swapped.model.components[static_cast<std::size_t>(k)] =
        start.model.components[static_cast<std::size_t>(1 - k)];
    swapped.model.pi(k) = start.model.pi(1 - k);
    swapped.state.R.col(k) = start.state.R.col(1 - k);
  }
  const auto a = inference::run_em(ds, cfg, start);
  const auto b = inference::run_em(ds, cfg, swapped);

  // lambda = 0 decouples the components; only reduction order differs.
  REQUIRE(a.report.objective_trace.size() == b.report.objective_trace.size());
  for (std::size_t i = 0; i < a.report.objective_trace.size(); ++i) {
    CHECK(a.report.objective_trace[i] ==
          doctest::Approx(b.report.objective_trace[i]).epsilon(1e-12));
  }
  CHECK((a.state.Y - b.state.Y).cwiseAbs().maxCoeff() < 1e-10);
  for (int k = 0; k < 2; ++k) {
    CHECK((b.state.R.col(k) - a.state.R.col(1 - k)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((b.model.components[static_cast<std::size_t>(k)].scales -
           a.model.components[static_cast<std::size_t>(1 - k)].scales)
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("single updates commute with relabeling under the prior") {
  std::mt19937_64 rng(15);
  const MatrixXd X = oracle::random_binary(12, 6, rng);
  const auto m = random_model(3, 6, 2, rng, 10.0);
  const auto st = random_state(X, m, rng);
  const int perm[] = {2, 0, 1};
  auto pm = m;
  LatentState ps = st;
  for (int k = 0; k < 3; ++k) {
    pm.components[static_cast<std::size_t>(k)] = m.components[static_cast<std::size_t>(perm[k])];
    pm.pi(k) = m.pi(perm[k]);
    ps.R.col(k) = st.R.col(perm[k]);
  }
  CHECK(inference::objective(X, ps, pm) ==
        doctest::Approx(inference::objective(X, st, m)).epsilon(1e-12));
  for (int k = 0; k < 3; ++k) {
    const auto u = inference::update_component_upsilon(X, ps, pm, k);
    const auto v = inference::update_component_upsilon(X, st, m, perm[k]);
    CHECK((u.matrix() - v.matrix()).cwiseAbs().maxCoeff() < 1e-8);
    const auto p = inference::update_component_phi(X, ps, pm, k, 2);
    const auto q = inference::update_component_phi(X, st, m, perm[k], 2);
    CHECK((p - q).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("predict") {
  std::mt19937_64 rng(13);
  const auto one = random_model(1, 6, 2, rng);
  const VectorXd x = oracle::random_binary(6, 1, rng);
  const auto p1 = inference::predict(x, one);
  CHECK(p1.posterior.size() == 1);
  CHECK(p1.posterior(0) == 1.0);
  CHECK(p1.z_star == 0);

  const auto m = random_model(3, 6, 2, rng);
  const auto p = inference::predict(x, m);
  CHECK(std::abs(p.posterior.sum() - 1.0) < 1e-12);
  Eigen::Index arg = 0;
  p.posterior.maxCoeff(&arg);
  CHECK(p.z_star == arg);

  auto perm = m;
  perm.components = {m.components[2], m.components[0], m.components[1]};
  perm.pi << m.pi(2), m.pi(0), m.pi(1);
  const auto q = inference::predict(x, perm);
  CHECK(std::abs(q.posterior(0) - p.posterior(2)) < 1e-10);
  CHECK(std::abs(q.posterior(1) - p.posterior(0)) < 1e-10);
  CHECK(std::abs(q.posterior(2) - p.posterior(1)) < 1e-10);
  const Eigen::Index mapped[] = {1, 2, 0};
  CHECK(q.z_star == mapped[p.z_star]);

  CHECK_THROWS_AS(inference::predict(VectorXd::Zero(5), m), UsageError);

  // equal posteriors break toward the lowest index
  auto twin = random_model(2, 6, 2, rng);
  twin.components[1] = twin.components[0];
  twin.pi << 0.5, 0.5;
  CHECK(inference::predict(x, twin).z_star == 0);
}

TEST_CASE("predictive log-likelihood is a log-sum-exp") {
  std::mt19937_64 rng(14);
  const auto m = random_model(3, 5, 2, rng);
  const VectorXd x = oracle::random_binary(5, 1, rng);
  const VectorXd y = oracle::random_matrix(2, 1, rng);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const VectorXd theta = materialize(m.components[static_cast<std::size_t>(k)]) * y;
    double ll = 0.0;
    for (int j = 0; j < 5; ++j) ll += oracle::bernoulli_log_pmf(x(j), theta(j));
    s += m.pi(k) * std::exp(ll);
  }
  CHECK(inference::predictive_log_likelihood(x, y, m) == doctest::Approx(std::log(s)).epsilon(1e-12));
}
