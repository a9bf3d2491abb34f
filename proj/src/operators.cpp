#include "pdtv/operators.hpp"

#include <cmath>

namespace pdtv {

VectorField grad(const ScalarField& u, SchemeKind /*scheme*/) {
  const int N = u.rows(), M = u.cols();
  VectorField out(N, M, 2);
  const double* up = u.data();
  double* o = out.data();
  for (int i = 0; i < N; ++i) {
    const double* row = up + static_cast<std::size_t>(i) * M;
    const double* next = row + M;  // valid only when i < N-1
    for (int j = 0; j < M; ++j) {
      const std::size_t c = 2 * (static_cast<std::size_t>(i) * M + j);
      o[c] = (i < N - 1) ? next[j] - row[j] : 0.0;
      o[c + 1] = (j < M - 1) ? row[j + 1] - row[j] : 0.0;
    }
  }
  return out;
}

ScalarField divergence(const VectorField& xi, SchemeKind /*scheme*/) {
  if (xi.dim() != 2)
    throw DimensionError("divergence: expected a 2-component field");
  const int N = xi.rows(), M = xi.cols();
  ScalarField out(N, M);
  double* o = out.data();
  const double* x = xi.data();
  // Negative adjoint of the forward-difference gradient: backward differences,
  // where the never-written boundary slots (component 0 on the last row,
  // component 1 on the last column) are treated as absent.
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < M; ++j) {
      const std::size_t c = 2 * (static_cast<std::size_t>(i) * M + j);
      double v = 0.0;
      if (i < N - 1) v += x[c];
      if (i > 0) v -= x[c - 2 * static_cast<std::size_t>(M)];
      if (j < M - 1) v += x[c + 1];
      if (j > 0) v -= x[c - 1];
      o[static_cast<std::size_t>(i) * M + j] = v;
    }
  }
  return out;
}

double total_variation(const ScalarField& u, SchemeKind scheme) {
  const int N = u.rows(), M = u.cols();
  const double* up = u.data();
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    const double* row = up + static_cast<std::size_t>(i) * M;
    const double* next = row + M;
    for (int j = 0; j < M; ++j) {
      const double gx = (i < N - 1) ? next[j] - row[j] : 0.0;
      const double gy = (j < M - 1) ? row[j + 1] - row[j] : 0.0;
      if (scheme == SchemeKind::standard)
        s += std::sqrt(gx * gx + gy * gy);
      else
        s += std::abs(gx) + std::abs(gy);
    }
  }
  return s;
}

double total_variation_weighted(const ScalarField& u, const ScalarField& g,
                                SchemeKind scheme) {
  if (!u.same_shape(g))
    throw DimensionError("total_variation_weighted: u and g shapes differ");
  const int N = u.rows(), M = u.cols();
  const double* up = u.data();
  const double* gp = g.data();
  double s = 0.0;
  for (int i = 0; i < N; ++i) {
    const std::size_t r = static_cast<std::size_t>(i) * M;
    const double* row = up + r;
    const double* next = row + M;
    for (int j = 0; j < M; ++j) {
      const double gx = (i < N - 1) ? next[j] - row[j] : 0.0;
      const double gy = (j < M - 1) ? row[j + 1] - row[j] : 0.0;
      if (scheme == SchemeKind::standard) {
        s += gp[r + j] * std::sqrt(gx * gx + gy * gy);
      } else {
        // face weights: arithmetic mean of the two adjacent cells
        if (i < N - 1) s += 0.5 * (gp[r + j] + gp[r + M + j]) * std::abs(gx);
        if (j < M - 1) s += 0.5 * (gp[r + j] + gp[r + j + 1]) * std::abs(gy);
      }
    }
  }
  return s;
}

}  // namespace pdtv
