#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdtv/field.hpp"
#include "pdtv/operators.hpp"

namespace pdtv {

struct ProblemSpec;  // solver.hpp

/// How the diameter factor in energy_gap_bound was obtained.
enum class DistBoundKind {
  box,      ///< sqrt(N*M) * range; rigorous when iterates and minimizer share a box
  chained,  ///< the previous step's rof_l2_bound (unclamped ROF only)
};

/// A posteriori stopping record for one certified iterate n. The bounds for
/// iterate n are built from the difference quotients of the *following* step,
/// so the newest solver state is never the certified one (it lags by one).
struct Certificate {
  long iter = 0;              ///< certified iterate index n
  double norm_dt_u = 0.0;     ///< |(u^{n+1}-u^n)/dt|_2
  double norm_dt_xi = 0.0;    ///< |(xi^{n+1}-xi^n)/dtau|_2
  std::optional<double> l2_bound;  ///< ROF only: bound on |u^n - u*|_2
  double energy_gap_bound = 0.0;   ///< bound on |J(u^n) - J(u*)|
  double energy = 0.0;             ///< J(u^n)
  DistBoundKind dist_kind = DistBoundKind::box;
  double dist_bound = 0.0;         ///< diameter factor used in energy_gap_bound
  std::optional<double> true_error;  ///< vs a caller-supplied reference, if any
};

/// ROF objective: total_variation(u, scheme) + (lambda/2) * sum (u-f)^2.
double energy_rof(const ScalarField& u, const ScalarField& f, double lambda,
                  SchemeKind scheme);

/// Weighted-TV segmentation objective:
/// total_variation_weighted(u, g, scheme) + sum f_plus*|u| + sum f_minus*|1-u|.
double energy_seg(const ScalarField& u, const ScalarField& f_plus,
                  const ScalarField& f_minus, const ScalarField& g,
                  SchemeKind scheme);

/// Distance bound for the ROF iterate from its difference-quotient norms:
///   1/2 * (a + sqrt(a^2 + 8*sqrt(N*M)*b/lambda)),  a = norm_dt_u/lambda,
///   b = norm_dt_xi. Throws std::domain_error for lambda <= 0 or negative
/// norms.
double rof_l2_bound(double norm_dt_u, double norm_dt_xi, double lambda,
                    int rows, int cols);

/// Objective-gap bound 2*sqrt(N*M)*norm_dt_xi + norm_dt_u*dist_bound.
/// Throws std::domain_error on negative inputs.
double energy_gap_bound(double norm_dt_u, double norm_dt_xi, int rows,
                        int cols, double dist_bound);

struct RofOracleResult {
  ScalarField u;   ///< reference minimizer f + div(xi)/lambda
  VectorField xi;  ///< feasible dual point reached by the projection method
};

/// Independent reference solver for the ROF problem: Chambolle-style
/// projected dual ascent xi <- P(xi + tau*grad(div xi + lambda f)) with
/// tau = 1/8, run for `iters` sweeps from xi = 0. The primal point is exact
/// for the returned dual point by construction; optimality_residual measures
/// how close that dual point is to saturating the TV term.
RofOracleResult oracle_rof(const ScalarField& f, double lambda,
                           SchemeKind scheme, long iters);

/// total_variation(u, scheme) - inner(grad u, xi): nonnegative (up to
/// rounding) for feasible xi, and ~0 exactly at a primal/dual optimal pair.
double optimality_residual(const ScalarField& u, const VectorField& xi,
                           SchemeKind scheme);

/// Long, small-step reference run for segmentation problems (documented
/// reference, not a certified optimum): the solver's own iteration from the
/// canonical start (u = 0.5 on free cells, pins applied, xi = 0) run for
/// `iters` steps with stopping disabled. Returns the final relaxed labeling.
ScalarField oracle_seg(const ProblemSpec& spec, long iters);

/// CSV with header iter,norm_dt_u,norm_dt_xi,l2_bound,energy_gap_bound,energy
/// (plus true_error when any record carries one). Doubles are written with
/// %.17g so equal traces serialize identically; absent optionals are empty.
std::string certificate_csv(std::span<const Certificate> trace);
void write_certificate_csv(const std::filesystem::path& path,
                           std::span<const Certificate> trace);

}  // namespace pdtv
