#include "depcam/manifold.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "depcam/errors.hpp"

namespace depcam::manifold {

namespace {

struct Svd {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd V;
};

Svd compact_svd(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Basis walk(const Basis& base, const Svd& svd, double t) {
  const Eigen::VectorXd cos_t = (svd.sigma * t).array().cos();
  const Eigen::VectorXd sin_t = (svd.sigma * t).array().sin();
  Eigen::MatrixXd out = base.matrix() * svd.V * cos_t.asDiagonal() *
                            svd.V.transpose() +
                        svd.U * sin_t.asDiagonal() * svd.V.transpose();
  return Basis::unchecked(std::move(out));
}

Basis maybe_reorthonormalize(Basis b, double threshold) {
  if (b.orthonormality_error() > threshold) return orthonormalize(b.matrix());
  return b;
}

}  // namespace

TangentDirection project_to_tangent(
    const Basis& base, const Eigen::Ref<const Eigen::MatrixXd>& g) {
  const Eigen::MatrixXd& u = base.matrix();
  if (g.rows() != u.rows() || g.cols() != u.cols()) {
    throw UsageError("project_to_tangent: shape mismatch");
  }
  return {g - u * (u.transpose() * g)};
}

Basis geodesic(const Basis& base, const TangentDirection& dir, double t) {
  if (t == 0.0 || dir.direction.isZero(0.0)) return base;
  return walk(base, compact_svd(dir.direction), t);
}

LineSearchResult line_search_geodesic(const BasisObjective& objective,
                                      const Basis& base,
                                      const TangentDirection& dir,
                                      const LineSearchOptions& options) {
  return line_search_geodesic(objective, base, objective(base), dir, options);
}

LineSearchResult line_search_geodesic(const BasisObjective& objective,
                                      const Basis& base, double base_value,
                                      const TangentDirection& dir,
                                      const LineSearchOptions& options) {
  LineSearchResult stay{0.0, base, base_value};
  if (!std::isfinite(base_value) || dir.direction.isZero(0.0)) return stay;

  const Svd svd = compact_svd(dir.direction);
  const double sigma_max = svd.sigma.maxCoeff();
  if (!(sigma_max > 0.0)) return stay;
  double t_max = std::numbers::pi / (2.0 * sigma_max + 1e-12);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int attempt = 0; attempt <= options.max_shrinks; ++attempt) {
    bool finite = true;
    auto probe = [&](double t) {
      const double v = objective(walk(base, svd, t));
      if (!std::isfinite(v)) finite = false;
      return v;
    };

    double best_t = 0.0;
    double best_v = base_value;
    auto consider = [&](double t, double v) {
      if (v > best_v) {
        best_t = t;
        best_v = v;
      }
    };

    double lo = 0.0;
    double hi = t_max;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double fa = probe(a);
    double fb = probe(b);
    for (int it = 0; it < options.iterations && finite; ++it) {
      consider(a, fa);
      consider(b, fb);
      if (fa >= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - inv_phi * (hi - lo);
        fa = probe(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + inv_phi * (hi - lo);
        fb = probe(b);
      }
    }
    if (!finite) {
      t_max *= 0.5;
      continue;
    }
    consider(a, fa);
    consider(b, fb);
    if (best_t == 0.0) return stay;

    Basis candidate = maybe_reorthonormalize(walk(base, svd, best_t),
                                             options.reorthonormalize_above);
    const double value = objective(candidate);
    if (!(value >= base_value)) return stay;
    return {best_t, std::move(candidate), value};
  }
  return stay;
}

}  // namespace depcam::manifold
