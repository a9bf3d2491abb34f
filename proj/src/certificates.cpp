#include "pdtv/certificates.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "pdtv/imageio.hpp"
#include "pdtv/projection.hpp"
#include "pdtv/solver.hpp"

namespace pdtv {

namespace {

double sum_sq_diff(const ScalarField& a, const ScalarField& b) {
  const double* ap = a.data();
  const double* bp = b.data();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = ap[i] - bp[i];
    s += d * d;
  }
  return s;
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

double energy_rof(const ScalarField& u, const ScalarField& f, double lambda,
                  SchemeKind scheme) {
  if (!u.same_shape(f)) throw DimensionError("energy_rof: u and f shapes differ");
  if (!(lambda > 0.0)) throw std::domain_error("energy_rof: lambda must be > 0");
  return total_variation(u, scheme) + 0.5 * lambda * sum_sq_diff(u, f);
}

double energy_seg(const ScalarField& u, const ScalarField& f_plus,
                  const ScalarField& f_minus, const ScalarField& g,
                  SchemeKind scheme) {
  if (!u.same_shape(f_plus) || !u.same_shape(f_minus) || !u.same_shape(g))
    throw DimensionError("energy_seg: field shapes differ");
  double s = total_variation_weighted(u, g, scheme);
  const double* up = u.data();
  const double* fp = f_plus.data();
  const double* fm = f_minus.data();
  for (std::size_t i = 0; i < u.size(); ++i)
    s += fp[i] * std::abs(up[i]) + fm[i] * std::abs(1.0 - up[i]);
  return s;
}

double rof_l2_bound(double norm_dt_u, double norm_dt_xi, double lambda,
                    int rows, int cols) {
  if (!(lambda > 0.0)) throw std::domain_error("rof_l2_bound: lambda must be > 0");
  if (norm_dt_u < 0.0 || norm_dt_xi < 0.0)
    throw std::domain_error("rof_l2_bound: norms must be nonnegative");
  if (rows < 1 || cols < 1)
    throw std::domain_error("rof_l2_bound: grid dimensions must be >= 1");
  const double a = norm_dt_u / lambda;
  const double cells = std::sqrt(static_cast<double>(rows) *
                                 static_cast<double>(cols));
  return 0.5 * (a + std::sqrt(a * a + 8.0 * cells * norm_dt_xi / lambda));
}

double energy_gap_bound(double norm_dt_u, double norm_dt_xi, int rows,
                        int cols, double dist_bound) {
  if (norm_dt_u < 0.0 || norm_dt_xi < 0.0 || dist_bound < 0.0)
    throw std::domain_error("energy_gap_bound: inputs must be nonnegative");
  if (rows < 1 || cols < 1)
    throw std::domain_error("energy_gap_bound: grid dimensions must be >= 1");
  const double cells = std::sqrt(static_cast<double>(rows) *
                                 static_cast<double>(cols));
  return 2.0 * cells * norm_dt_xi + norm_dt_u * dist_bound;
}

RofOracleResult oracle_rof(const ScalarField& f, double lambda,
                           SchemeKind scheme, long iters) {
  if (!(lambda > 0.0)) throw std::domain_error("oracle_rof: lambda must be > 0");
  const int N = f.rows(), M = f.cols();
  const double tau = 0.125;  // < 2/||grad div|| = 1/4 in 2-D, unit spacing

  VectorField xi(N, M, 2);
  ScalarField w(N, M);  // div(xi) + lambda*f
  const double* fp = f.data();
  double* xp = xi.data();
  double* wp = w.data();

  for (long it = 0; it < iters; ++it) {
    // w = div(xi) + lambda*f
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < M; ++j) {
        const std::size_t cell = static_cast<std::size_t>(i) * M + j;
        const std::size_t c = 2 * cell;
        double v = lambda * fp[cell];
        if (i < N - 1) v += xp[c];
        if (i > 0) v -= xp[c - 2 * static_cast<std::size_t>(M)];
        if (j < M - 1) v += xp[c + 1];
        if (j > 0) v -= xp[c - 1];
        wp[cell] = v;
      }
    }
    // xi <- P(xi + tau*grad(w)); in place is safe: the update only reads w
    for (int i = 0; i < N; ++i) {
      const std::size_t r = static_cast<std::size_t>(i) * M;
      for (int j = 0; j < M; ++j) {
        const std::size_t c = 2 * (r + j);
        if (i < N - 1) xp[c] += tau * (wp[r + M + j] - wp[r + j]);
        if (j < M - 1) xp[c + 1] += tau * (wp[r + j + 1] - wp[r + j]);
        if (scheme == SchemeKind::standard) {
          detail::project_cell_euclidean(xp + c, 2, 1.0);
        } else {
          xp[c] = detail::project_face(xp[c], 1.0);
          xp[c + 1] = detail::project_face(xp[c + 1], 1.0);
        }
      }
    }
  }

  // Primal point from the dual one; the fidelity identity holds by
  // construction.
  RofOracleResult out{ScalarField(N, M), std::move(xi)};
  const ScalarField dv = divergence(out.xi, scheme);
  const double* dp = dv.data();
  double* up = out.u.data();
  for (std::size_t i = 0; i < out.u.size(); ++i)
    up[i] = fp[i] + dp[i] / lambda;
  return out;
}

double optimality_residual(const ScalarField& u, const VectorField& xi,
                           SchemeKind scheme) {
  return total_variation(u, scheme) - inner(grad(u, scheme), xi);
}

ScalarField oracle_seg(const ProblemSpec& spec, long iters) {
  const auto* seg = std::get_if<SegTerm>(&spec.data_term);
  if (!seg) throw std::invalid_argument("oracle_seg: spec must carry a Seg term");

  ProblemSpec ref = spec;
  ref.max_iter = iters;
  ref.tol = 0.0;         // run the full budget
  ref.log_every = 0;     // certificates are not the product here

  // Canonical start: undecided labeling on free cells, pins applied, xi = 0.
  const int N = seg->f_plus.rows(), M = seg->f_plus.cols();
  ScalarField u0(N, M, 0.5);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < M; ++j) {
      const SeedTag t = seg->seeds(i, j);
      if (t == SeedTag::pin0) u0(i, j) = 0.0;
      else if (t == SeedTag::pin1) u0(i, j) = 1.0;
    }
  VectorField xi0(N, M, 2);
  return run(ref, std::move(u0), std::move(xi0)).state.u;
}

std::string certificate_csv(std::span<const Certificate> trace) {
  bool with_true_error = false;
  for (const Certificate& c : trace)
    if (c.true_error) with_true_error = true;

  std::string out = "iter,norm_dt_u,norm_dt_xi,l2_bound,energy_gap_bound,energy";
  if (with_true_error) out += ",true_error";
  out += "\n";
  for (const Certificate& c : trace) {
    out += std::to_string(c.iter);
    out += ',';
    append_double(out, c.norm_dt_u);
    out += ',';
    append_double(out, c.norm_dt_xi);
    out += ',';
    if (c.l2_bound) append_double(out, *c.l2_bound);
    out += ',';
    append_double(out, c.energy_gap_bound);
    out += ',';
    append_double(out, c.energy);
    if (with_true_error) {
      out += ',';
      if (c.true_error) append_double(out, *c.true_error);
    }
    out += '\n';
  }
  return out;
}

void write_certificate_csv(const std::filesystem::path& path,
                           std::span<const Certificate> trace) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  const std::string body = certificate_csv(trace);
  f.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!f) throw IoError("short write: " + path.string());
}

}  // namespace pdtv
