#ifndef DEPCAM_MANIFOLD_HPP
#define DEPCAM_MANIFOLD_HPP

#include <functional>

#include <Eigen/Dense>

#include "depcam/components.hpp"

namespace depcam::manifold {

// A direction in the tangent space of the Grassmann manifold at some base
// point U: U^T direction = 0.
struct TangentDirection {
  Eigen::MatrixXd direction;
};

// G - U U^T G
TangentDirection project_to_tangent(const Basis& base,
                                    const Eigen::Ref<const Eigen::MatrixXd>& g);

// U(t) = U V cos(S t) V^T + W sin(S t) V^T, where W S V^T is the compact SVD
// of the direction. U(0) = U and dU/dt(0) = direction.
Basis geodesic(const Basis& base, const TangentDirection& dir, double t);

struct LineSearchResult {
  double t_star = 0.0;
  Basis basis;
  double value = 0.0;  // objective at `basis`
};

struct LineSearchOptions {
  int iterations = 32;
  int max_shrinks = 8;
  // Re-orthonormalize an accepted point when ||U^T U - I||_F exceeds this.
  double reorthonormalize_above = 1e-10;
};

using BasisObjective = std::function<double(const Basis&)>;

// Golden-section search for the maximizer of `objective` along the geodesic
// on t in [0, pi / (2 sigma_max + 1e-12)]. Never returns a point whose
// objective is below the base value; t_star = 0 (the base) is a valid answer.
// A non-finite probe halves the bracket, up to max_shrinks times.
LineSearchResult line_search_geodesic(const BasisObjective& objective,
                                      const Basis& base,
                                      const TangentDirection& dir,
                                      const LineSearchOptions& options = {});

// Same, with the base objective value already known.
LineSearchResult line_search_geodesic(const BasisObjective& objective,
                                      const Basis& base, double base_value,
                                      const TangentDirection& dir,
                                      const LineSearchOptions& options = {});

}  // namespace depcam::manifold

#endif  // DEPCAM_MANIFOLD_HPP
