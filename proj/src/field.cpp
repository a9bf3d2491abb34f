#include "pdtv/field.hpp"

#include <cmath>

namespace pdtv {

namespace {

// Plain left-to-right accumulation: the fixed order makes every norm
// bitwise-reproducible, and the solver's fused loops reproduce it exactly.
double sum_of_squares(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double l2_norm(const ScalarField& u) { return std::sqrt(sum_of_squares(u.values())); }

double l2_norm(const VectorField& xi) { return std::sqrt(sum_of_squares(xi.values())); }

double inner(const ScalarField& a, const ScalarField& b) {
  if (!a.same_shape(b)) throw DimensionError("inner: scalar field shapes differ");
  return dot(a.values(), b.values());
}

double inner(const VectorField& a, const VectorField& b) {
  if (!a.same_shape(b)) throw DimensionError("inner: vector field shapes differ");
  return dot(a.values(), b.values());
}

ScalarField pointwise_euclidean_norms(const VectorField& xi) {
  ScalarField out(xi.rows(), xi.cols());
  const int d = xi.dim();
  const double* src = xi.data();
  double* dst = out.data();
  const std::size_t cells = out.size();
  for (std::size_t c = 0; c < cells; ++c) {
    double sq = 0.0;
    for (int k = 0; k < d; ++k) {
      const double v = src[c * d + k];
      sq += v * v;
    }
    dst[c] = std::sqrt(sq);
  }
  return out;
}

ScalarField axpy(double a, const ScalarField& x, const ScalarField& y) {
  if (!x.same_shape(y)) throw DimensionError("axpy: scalar field shapes differ");
  ScalarField out = y;
  double* o = out.data();
  const double* xs = x.data();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] += a * xs[i];
  return out;
}

VectorField axpy(double a, const VectorField& x, const VectorField& y) {
  if (!x.same_shape(y)) throw DimensionError("axpy: vector field shapes differ");
  VectorField out = y;
  double* o = out.data();
  const double* xs = x.data();
  for (std::size_t i = 0; i < out.size(); ++i) o[i] += a * xs[i];
  return out;
}

bool all_finite(const ScalarField& u) {
  for (double v : u.values())
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const VectorField& xi) {
  for (double v : xi.values())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace pdtv
