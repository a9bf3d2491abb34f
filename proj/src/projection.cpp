#include "pdtv/projection.hpp"

#include <string>

namespace pdtv {

namespace {

void check_weights(const ScalarField& g) {
  for (double v : g.values())
    if (!(v > 0.0))
      throw std::domain_error("project_weighted_ball: g must be > 0 everywhere");
}

void check_shapes(const VectorField& xi, const ScalarField& g) {
  if (xi.rows() != g.rows() || xi.cols() != g.cols())
    throw DimensionError("project_weighted_ball: xi and g shapes differ");
}

}  // namespace

void project_unit_ball_in_place(VectorField& xi, SchemeKind scheme) {
  const int d = xi.dim();
  double* x = xi.data();
  const std::size_t cells = xi.size() / d;
  if (scheme == SchemeKind::standard && d > 1) {
    for (std::size_t c = 0; c < cells; ++c)
      detail::project_cell_euclidean(x + c * d, d, 1.0);
  } else {
    // Face-wise ball (and the d = 1 case, where both coincide): exact clamp.
    for (std::size_t i = 0; i < xi.size(); ++i)
      x[i] = detail::project_face(x[i], 1.0);
  }
}

void project_weighted_ball_in_place(VectorField& xi, const ScalarField& g,
                                    SchemeKind scheme) {
  check_shapes(xi, g);
  check_weights(g);
  const int N = xi.rows(), M = xi.cols(), d = xi.dim();
  double* x = xi.data();
  const double* gp = g.data();
  if (scheme == SchemeKind::standard && d > 1) {
    const std::size_t cells = xi.size() / d;
    for (std::size_t c = 0; c < cells; ++c)
      detail::project_cell_euclidean(x + c * d, d, gp[c]);
  } else if (d == 2) {
    for (int i = 0; i < N; ++i) {
      const std::size_t r = static_cast<std::size_t>(i) * M;
      for (int j = 0; j < M; ++j) {
        const std::size_t c = 2 * (r + j);
        const double gx =
            (i < N - 1) ? 0.5 * (gp[r + j] + gp[r + M + j]) : gp[r + j];
        const double gy =
            (j < M - 1) ? 0.5 * (gp[r + j] + gp[r + j + 1]) : gp[r + j];
        x[c] = detail::project_face(x[c], gx);
        x[c + 1] = detail::project_face(x[c + 1], gy);
      }
    }
  } else {
    // d = 1: the cell weight is the face weight.
    for (std::size_t c = 0; c < xi.size(); ++c)
      x[c] = detail::project_face(x[c], gp[c]);
  }
}

VectorField project_unit_ball(VectorField xi, SchemeKind scheme) {
  project_unit_ball_in_place(xi, scheme);
  return xi;
}

VectorField project_weighted_ball(VectorField xi, const ScalarField& g,
                                  SchemeKind scheme) {
  project_weighted_ball_in_place(xi, g, scheme);
  return xi;
}

}  // namespace pdtv
