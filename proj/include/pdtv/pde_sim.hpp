#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "pdtv/field.hpp"

namespace pdtv {

/// Thrown for inconsistent run configurations (e.g. a time step above the
/// stability limit).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// 1-D wave validator on [0,1] with n cells of width h = 1/n.
/// u lives at cell centers x = (k+1/2)/n (a 1 x n ScalarField); xi lives at
/// the left cell faces x = k/n, k = 0..n-1 (a 1 x n x 1 VectorField) with the
/// face x = 1 implicitly zero, so gradients are backward differences and
/// divergences forward differences -- a layout deliberately distinct from the
/// image modules' forward-difference cells.
///
/// Exact separated-mode solution used for validation: on [0,1] with zero-flux
/// ends, u(t,x) = (1/2) cos(pi x) sin(pi t), xi(t,x) = (1/2) sin(pi x)
/// cos(pi t), period 2, with constant rate energy |du/dt|^2 + |dxi/dt|^2.
std::pair<ScalarField, VectorField> analytic_oscillation(double t, int n);

struct Trajectory1d {
  std::vector<double> t;          ///< sample times, t[0] = 0
  std::vector<double> u_l2;       ///< sqrt(h * sum u^2)
  std::vector<double> tv;         ///< sum |u_k - u_{k-1}| (discrete total variation)
  std::vector<double> sup_error;  ///< max abs deviation from the analytic mode
  /// Rate energy h*(|du/dt|^2 + |dxi/dt|^2) per step (size = steps; entry m
  /// covers the step from t[m] to t[m+1]).
  std::vector<double> rate_energy;
  ScalarField u;   ///< final u
  VectorField xi;  ///< final xi
};

/// Symplectic-Euler integration of the wave system du/dt = div xi,
/// dxi/dt = grad u (dual update first, with |xi| kept <= 1 by a face clamp:
/// the analytic mode stays strictly inside, so the clamp is inactive for it).
/// Stability requires dt <= 0.5*h; violating it throws ConfigError.
Trajectory1d simulate_1d(int n, double dt, long steps, const ScalarField& u0,
                         const VectorField& xi0);

/// CSV with header t,u_l2,tv,sup_error (%.17g, one row per sample).
std::string trajectory_csv(const Trajectory1d& traj);
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory1d& traj);

}  // namespace pdtv
