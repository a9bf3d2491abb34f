#include "pdtv/pde_sim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "pdtv/imageio.hpp"
#include "pdtv/projection.hpp"

namespace pdtv {

namespace {

constexpr double kPi = std::numbers::pi;

struct Samples {
  double u_l2;
  double tv;
  double sup_error;
};

Samples measure(const ScalarField& u, const VectorField& xi, double t, int n) {
  const double h = 1.0 / n;
  double ssq = 0.0, tv = 0.0, sup = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = u(0, k);
    ssq += v * v;
    if (k > 0) tv += std::abs(v - u(0, k - 1));
    const double x = (k + 0.5) / n;
    sup = std::max(sup, std::abs(v - 0.5 * std::cos(kPi * x) * std::sin(kPi * t)));
    const double xf = static_cast<double>(k) / n;
    sup = std::max(
        sup, std::abs(xi(0, k, 0) - 0.5 * std::sin(kPi * xf) * std::cos(kPi * t)));
  }
  return {std::sqrt(h * ssq), tv, sup};
}

}  // namespace

std::pair<ScalarField, VectorField> analytic_oscillation(double t, int n) {
  if (n < 2) throw ConfigError("analytic_oscillation: n must be >= 2");
  ScalarField u(1, n);
  VectorField xi(1, n, 1);
  for (int k = 0; k < n; ++k) {
    u(0, k) = 0.5 * std::cos(kPi * (k + 0.5) / n) * std::sin(kPi * t);
    xi(0, k, 0) = 0.5 * std::sin(kPi * static_cast<double>(k) / n) * std::cos(kPi * t);
  }
  return {std::move(u), std::move(xi)};
}

Trajectory1d simulate_1d(int n, double dt, long steps, const ScalarField& u0,
                         const VectorField& xi0) {
  if (n < 2) throw ConfigError("simulate_1d: n must be >= 2");
  const double h = 1.0 / n;
  if (!(dt > 0.0) || dt > 0.5 * h * (1.0 + 1e-12))
    throw ConfigError("simulate_1d: dt must satisfy 0 < dt <= 0.5/n");
  if (steps < 0) throw ConfigError("simulate_1d: steps must be >= 0");
  if (u0.rows() != 1 || u0.cols() != n)
    throw DimensionError("simulate_1d: u0 must be 1 x n");
  if (xi0.rows() != 1 || xi0.cols() != n || xi0.dim() != 1)
    throw DimensionError("simulate_1d: xi0 must be 1 x n x 1");

  Trajectory1d traj;
  traj.u = u0;
  traj.xi = xi0;
  ScalarField& u = traj.u;
  VectorField& xi = traj.xi;

  auto record = [&](double t) {
    const Samples s = measure(u, xi, t, n);
    traj.t.push_back(t);
    traj.u_l2.push_back(s.u_l2);
    traj.tv.push_back(s.tv);
    traj.sup_error.push_back(s.sup_error);
  };
  record(0.0);

  std::vector<double> u_old(static_cast<std::size_t>(n));
  std::vector<double> xi_old(static_cast<std::size_t>(n));
  for (long m = 1; m <= steps; ++m) {
    for (int k = 0; k < n; ++k) {
      u_old[k] = u(0, k);
      xi_old[k] = xi(0, k, 0);
    }
    // Dual first: xi_k sits at face x = k/n, its gradient is the backward
    // difference of cell values; face 0 is the zero-flux boundary. The ball
    // projection is a clamp; the analytic mode never activates it.
    for (int k = 1; k < n; ++k) {
      const double grad = (u_old[k] - u_old[k - 1]) / h;
      xi(0, k, 0) = detail::project_face(xi_old[k] + dt * grad, 1.0);
    }
    xi(0, 0, 0) = detail::project_face(xi_old[0], 1.0);
    // Primal: divergence at cell k is the forward face difference, with the
    // face x = 1 carrying zero flux.
    double ssq_du = 0.0, ssq_dxi = 0.0;
    for (int k = 0; k < n; ++k) {
      const double right = (k + 1 < n) ? xi(0, k + 1, 0) : 0.0;
      const double div = (right - xi(0, k, 0)) / h;
      u(0, k) = u_old[k] + dt * div;
      const double du = (u(0, k) - u_old[k]) / dt;
      const double dxi = (xi(0, k, 0) - xi_old[k]) / dt;
      ssq_du += du * du;
      ssq_dxi += dxi * dxi;
    }
    traj.rate_energy.push_back(h * (ssq_du + ssq_dxi));
    record(m * dt);
  }
  return traj;
}

std::string trajectory_csv(const Trajectory1d& traj) {
  std::string out = "t,u_l2,tv,sup_error\n";
  char buf[176];
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", traj.t[i],
                  traj.u_l2[i], traj.tv[i], traj.sup_error[i]);
    out += buf;
  }
  return out;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory1d& traj) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  const std::string body = trajectory_csv(traj);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw IoError("short write: " + path.string());
}

}  // namespace pdtv
