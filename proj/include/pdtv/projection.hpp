#pragma once

#include <algorithm>
#include <cmath>

#include "pdtv/field.hpp"
#include "pdtv/operators.hpp"

namespace pdtv {

namespace detail {

/// Relative slack used by the Euclidean cell projection: norms within
/// radius*(1+kProjBand) count as feasible. Radial rescaling in floating point
/// can overshoot the sphere by a few ulp; accepting that band keeps
/// project(project(x)) bitwise equal to project(x) while every output norm
/// stays <= radius*(1+1e-15).
inline constexpr double kProjBand = 1e-15;

/// Project one d-vector onto the Euclidean ball of the given radius, in place.
inline void project_cell_euclidean(double* comps, int d, double radius) {
  double sq = 0.0;
  for (int k = 0; k < d; ++k) sq += comps[k] * comps[k];
  const double n = std::sqrt(sq);
  if (n <= radius * (1.0 + kProjBand)) return;
  const double scale = radius / n;
  for (int k = 0; k < d; ++k) comps[k] *= scale;
}

/// Project one face value onto [-radius, radius] (exact, trivially idempotent).
inline double project_face(double v, double radius) {
  return std::clamp(v, -radius, radius);
}

}  // namespace detail

/// Pointwise projection onto the scheme's unit dual ball: per-cell Euclidean
/// ball for `standard`, per-face clamp to [-1,1] for `staggered`.
VectorField project_unit_ball(VectorField xi, SchemeKind scheme);

/// Weighted variant with per-cell radius g > 0. `standard` uses the cell's
/// own g; `staggered` clamps each face to the arithmetic mean of the two
/// adjacent cell weights. Throws std::domain_error when g has a nonpositive
/// entry, DimensionError when shapes disagree.
VectorField project_weighted_ball(VectorField xi, const ScalarField& g,
                                  SchemeKind scheme);

void project_unit_ball_in_place(VectorField& xi, SchemeKind scheme);
void project_weighted_ball_in_place(VectorField& xi, const ScalarField& g,
                                    SchemeKind scheme);

}  // namespace pdtv
