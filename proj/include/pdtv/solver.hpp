#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pdtv/certificates.hpp"
#include "pdtv/field.hpp"
#include "pdtv/operators.hpp"

namespace pdtv {

/// Quadratic-fidelity data term (lambda/2)*sum (u-f)^2.
struct RofTerm {
  ScalarField f;
  double lambda = 1.0;
};

/// Region-weight data term sum f_plus*|u| + sum f_minus*|1-u| with seed
/// pinning and a per-cell dual-ball radius g (edge weight).
struct SegTerm {
  ScalarField f_plus;
  ScalarField f_minus;
  SeedMask seeds;
  ScalarField g;
};

struct ProblemSpec {
  std::variant<RofTerm, SegTerm> data_term;
  double dt = 0.0;    ///< primal step
  double dtau = 0.0;  ///< dual step
  SchemeKind scheme = SchemeKind::standard;
  bool clamp01 = false;  ///< keep u in [0,1] (segmentation default)
  long max_iter = 0;
  long log_every = 100;  ///< certificate cadence; <= 0 logs first/last only
  double tol = 0.0;      ///< stop when the problem's bound <= tol; <= 0 disables
};

/// Convenience constructors with the conventional defaults (ROF: dt = 1/lambda,
/// dtau = lambda/5, no clamping; segmentation: dt = dtau = 0.2, clamped).
ProblemSpec make_rof_spec(ScalarField f, double lambda);
ProblemSpec make_seg_spec(ScalarField f_plus, ScalarField f_minus,
                          SeedMask seeds, ScalarField g);

struct PdState {
  ScalarField u;
  VectorField xi;
  ScalarField dt_u;   ///< (u^k - u^{k-1})/dt after step k, zero initially
  VectorField dt_xi;  ///< (xi^k - xi^{k-1})/dtau after step k, zero initially
  long iter = 0;
};

/// One primal-dual step: dual ascent on xi with projection onto the scheme's
/// ball, then explicit primal descent u += dt*(div xi_new - p) with p the
/// data-term subgradient, optional clamping to [0,1], and seed re-pinning.
/// Pure: the input state is untouched.
PdState pd_step(const PdState& state, const ProblemSpec& spec);

struct RunResult {
  PdState state;                   ///< newest iterate (one past the last certificate)
  std::vector<Certificate> trace;  ///< first certified iterate, cadence, final
  bool tol_reached = false;
};

/// Iterate pd_step from (u0, xi0) until max_iter or until the problem's
/// certificate bound (ROF: rof_l2_bound, segmentation: energy_gap_bound)
/// drops to spec.tol. xi0 is projected onto the dual ball first. When
/// `reference` is given, logged certificates carry true_error: |u^n - ref|_2
/// for ROF, |J(u^n) - J(ref)| for segmentation. Bitwise deterministic for
/// identical inputs; certificates are emitted for iterate n = step-1.
RunResult run(const ProblemSpec& spec, ScalarField u0, VectorField xi0,
              const ScalarField* reference = nullptr);

/// Binary labeling: 1 where u > s, else 0. s must lie in (0,1).
ScalarField threshold(const ScalarField& u, double s);

}  // namespace pdtv
