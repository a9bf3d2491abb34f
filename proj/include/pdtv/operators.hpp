#pragma once

#include "pdtv/field.hpp"

namespace pdtv {

/// Dual-ball flavor. Both kinds use the same forward-difference gradient and
/// its negative-adjoint divergence; they differ only in how the projection
/// (and the matching TV integrand) couples the d components per cell:
/// `standard` uses one Euclidean ball per cell, `staggered` one interval per
/// face (componentwise).
enum class SchemeKind { standard, staggered };

/// Forward-difference gradient with homogeneous Neumann closure: component 0
/// is the row difference u(i+1,j)-u(i,j) (zero on the last row), component 1
/// the column difference u(i,j+1)-u(i,j) (zero on the last column).
/// Grid spacing is 1. The scheme kind does not change the arithmetic.
VectorField grad(const ScalarField& u, SchemeKind scheme);

/// Negative adjoint of grad (backward differences with one-sided closure),
/// so that inner(grad(u), xi) == -inner(u, divergence(xi)) exactly up to
/// rounding. The boundary slots of xi that grad never writes (last row of
/// component 0, last column of component 1) are never read.
ScalarField divergence(const VectorField& xi, SchemeKind scheme);

/// Sum over cells of the scheme's gradient integrand: Euclidean cell norms
/// for `standard`, absolute face values for `staggered`.
double total_variation(const ScalarField& u, SchemeKind scheme);

/// Same, with a positive per-cell weight g (face values use the arithmetic
/// mean of the two adjacent cell weights, matching the weighted projection).
double total_variation_weighted(const ScalarField& u, const ScalarField& g,
                                SchemeKind scheme);

}  // namespace pdtv
