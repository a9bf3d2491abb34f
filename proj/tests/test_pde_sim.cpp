#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "pdtv/imageio.hpp"
#include "pdtv/pde_sim.hpp"

using namespace pdtv;

namespace {

/// Runs the analytic-mode initialized simulation over [0, t_end].
Trajectory1d analytic_run(int n, double t_end) {
  const double dt = 0.5 / n;
  const auto [u0, xi0] = analytic_oscillation(0.0, n);
  return simulate_1d(n, dt, static_cast<long>(std::lround(t_end / dt)), u0, xi0);
}

}  // namespace

// ------------------------------------------------------- analytic samples --

TEST_CASE("analytic_oscillation: t = 0 has a silent u and a sine dual") {
  const int n = 32;
  const auto [u, xi] = analytic_oscillation(0.0, n);
  for (double v : u.values()) CHECK(v == 0.0);
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    CHECK(xi(0, k, 0) ==
          doctest::Approx(0.5 * std::sin(std::numbers::pi * x)).epsilon(1e-15));
  }
  CHECK(xi(0, 0, 0) == 0.0);  // zero-flux boundary face is exact
}

TEST_CASE("analytic_oscillation: the dual vanishes at the quarter period") {
  const auto [u, xi] = analytic_oscillation(0.5, 64);
  for (double v : xi.values()) CHECK(std::abs(v) <= 1e-16);
  // and u is at full amplitude there
  double umax = 0.0;
  for (double v : u.values()) umax = std::max(umax, std::abs(v));
  CHECK(umax == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("analytic_oscillation: period is 2") {
  const int n = 48;
  const auto [u0, xi0] = analytic_oscillation(0.0, n);
  const auto [u2, xi2] = analytic_oscillation(2.0, n);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(u2(0, k) - u0(0, k)) <= 1e-15);
    CHECK(std::abs(xi2(0, k, 0) - xi0(0, k, 0)) <= 1e-15);
  }
}

// ------------------------------------------------------------- simulation --

TEST_CASE("simulate_1d: zero data stays exactly zero") {
  const int n = 16;
  const Trajectory1d tr =
      simulate_1d(n, 0.5 / n, 100, ScalarField(1, n), VectorField(1, n, 1));
  REQUIRE(tr.t.size() == 101);
  for (double v : tr.u_l2) CHECK(v == 0.0);
  for (double v : tr.tv) CHECK(v == 0.0);
  for (double v : tr.u.values()) CHECK(v == 0.0);
  for (double v : tr.xi.values()) CHECK(v == 0.0);
}

TEST_CASE("simulate_1d: zero steps records only the initial sample") {
  const int n = 8;
  const auto [u0, xi0] = analytic_oscillation(0.0, n);
  const Trajectory1d tr = simulate_1d(n, 0.5 / n, 0, u0, xi0);
  CHECK(tr.t.size() == 1);
  CHECK(tr.t[0] == 0.0);
  CHECK(tr.rate_energy.empty());
  CHECK(tr.sup_error[0] <= 1e-15);  // starts on the analytic mode
}

TEST_CASE("simulate_1d: enforces the stability limit") {
  const int n = 32;
  const ScalarField u0(1, n);
  const VectorField xi0(1, n, 1);
  CHECK_NOTHROW(simulate_1d(n, 0.5 / n, 10, u0, xi0));  // at the limit is fine
  CHECK_THROWS_AS(simulate_1d(n, 0.51 / n, 10, u0, xi0), ConfigError);
  CHECK_THROWS_AS(simulate_1d(n, 0.0, 10, u0, xi0), ConfigError);
  CHECK_THROWS_AS(simulate_1d(n, -0.1, 10, u0, xi0), ConfigError);
  CHECK_THROWS_AS(simulate_1d(1, 0.1, 10, ScalarField(1, 1), VectorField(1, 1, 1)),
                  ConfigError);
  CHECK_THROWS_AS(simulate_1d(n, 0.5 / n, -1, u0, xi0), ConfigError);
}

TEST_CASE("simulate_1d: rejects mismatched initial data") {
  const int n = 16;
  CHECK_THROWS_AS(simulate_1d(n, 0.5 / n, 1, ScalarField(1, n + 1), VectorField(1, n, 1)),
                  DimensionError);
  CHECK_THROWS_AS(simulate_1d(n, 0.5 / n, 1, ScalarField(1, n), VectorField(1, n, 2)),
                  DimensionError);
  CHECK_THROWS_AS(simulate_1d(n, 0.5 / n, 1, ScalarField(2, n), VectorField(1, n, 1)),
                  DimensionError);
}

TEST_CASE("simulate_1d: second-order convergence to the analytic mode") {
  double prev = 0.0;
  for (int n : {64, 128, 256}) {
    const Trajectory1d tr = analytic_run(n, 1.0);
    const double err = tr.sup_error.back();
    CHECK(err < 2e-4);
    if (prev > 0.0) {
      const double order = std::log2(prev / err);
      CHECK(order >= 0.9);  // measured ~2.0; anything below first order fails
    }
    prev = err;
  }
}

TEST_CASE("simulate_1d: rate energy is conserved along the mode") {
  // The oscillating mode carries constant h*(|du/dt|^2 + |dxi/dt|^2)
  // = pi^2/8; the discrete trajectory over one full period must hold it
  // to within 5% of its time-average.
  const Trajectory1d tr = analytic_run(128, 2.0);
  REQUIRE(!tr.rate_energy.empty());
  double sum = 0.0;
  for (double e : tr.rate_energy) sum += e;
  const double avg = sum / static_cast<double>(tr.rate_energy.size());
  CHECK(avg == doctest::Approx(std::numbers::pi * std::numbers::pi / 8.0)
                   .epsilon(0.05));
  for (double e : tr.rate_energy) {
    CHECK(e >= 0.95 * avg);
    CHECK(e <= 1.05 * avg);
  }
}

TEST_CASE("simulate_1d: the oscillation never dies down") {
  // |u(t)|_2 returns to full amplitude near t = 1.5; a dissipative scheme
  // (or an accidental gradient-flow implementation) would fail this floor.
  const Trajectory1d tr = analytic_run(128, 2.0);
  double u_max = 0.0;
  double win_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    u_max = std::max(u_max, tr.u_l2[i]);
    if (tr.t[i] >= 1.4 && tr.t[i] <= 1.6)
      win_min = std::min(win_min, tr.u_l2[i]);
  }
  CHECK(u_max > 0.3);
  CHECK(win_min >= 0.2 * u_max);
}

TEST_CASE("simulate_1d: dual stays well inside the unit constraint") {
  const Trajectory1d tr = analytic_run(64, 2.0);
  for (double v : tr.xi.values()) CHECK(std::abs(v) <= 0.6);
}

// -------------------------------------------------------------------- CSV --

TEST_CASE("trajectory_csv: exact serialization of a hand-built trajectory") {
  Trajectory1d tr;
  tr.t = {0.0, 0.5};
  tr.u_l2 = {1.0, 0.25};
  tr.tv = {0.0, 3.0};
  tr.sup_error = {0.125, 1e-3};
  CHECK(trajectory_csv(tr) ==
        "t,u_l2,tv,sup_error\n"
        "0,1,0,0.125\n"
        "0.5,0.25,3,0.001\n");
}

TEST_CASE("write_trajectory_csv: file contents equal the in-memory string") {
  const Trajectory1d tr = analytic_run(16, 0.5);
  const auto path = std::filesystem::temp_directory_path() / "pdtv_traj_test.csv";
  write_trajectory_csv(path, tr);
  std::ifstream in(path, std::ios::binary);
  const std::string contents((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  CHECK(contents == trajectory_csv(tr));
  std::filesystem::remove(path);
}

TEST_CASE("write_trajectory_csv: unwritable path raises IoError") {
  CHECK_THROWS_AS(
      write_trajectory_csv("/nonexistent_dir_pdtv/traj.csv", Trajectory1d{}),
      IoError);
}
