#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdtv {

/// Thrown when two grids that must agree in shape do not.
class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// N x M real-valued grid function, row-major (index (i,j) with i the row).
class ScalarField {
public:
  ScalarField() = default;

  ScalarField(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
      throw DimensionError("ScalarField: rows and cols must be >= 1, got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    values_.assign(static_cast<std::size_t>(rows) * cols, fill);
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int i, int j) const noexcept { return values_[idx(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[idx(i, j)]; }

  const double* data() const noexcept { return values_.data(); }
  double* data() noexcept { return values_.data(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool same_shape(const ScalarField& o) const noexcept {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

private:
  std::size_t idx(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * cols_ + j;
  }

  int rows_ = 0, cols_ = 0;
  std::vector<double> values_;
};

/// N x M x d grid of small vectors (d = 2 for images, d = 1 for the 1-D demo).
/// Storage is cell-major with the component index fastest.
class VectorField {
public:
  VectorField() = default;

  VectorField(int rows, int cols, int dim, double fill = 0.0)
      : rows_(rows), cols_(cols), dim_(dim) {
    if (rows < 1 || cols < 1 || dim < 1)
      throw DimensionError("VectorField: rows, cols and dim must be >= 1, got " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           "x" + std::to_string(dim));
    values_.assign(static_cast<std::size_t>(rows) * cols * dim, fill);
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int i, int j, int k) const noexcept { return values_[idx(i, j, k)]; }
  double& operator()(int i, int j, int k) noexcept { return values_[idx(i, j, k)]; }

  const double* data() const noexcept { return values_.data(); }
  double* data() noexcept { return values_.data(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  bool same_shape(const VectorField& o) const noexcept {
    return rows_ == o.rows_ && cols_ == o.cols_ && dim_ == o.dim_;
  }

private:
  std::size_t idx(int i, int j, int k) const noexcept {
    return (static_cast<std::size_t>(i) * cols_ + j) * dim_ + k;
  }

  int rows_ = 0, cols_ = 0, dim_ = 1;
  std::vector<double> values_;
};

/// Per-cell pinning state for seeded segmentation.
enum class SeedTag : unsigned char { free, pin0, pin1 };

/// N x M mask of SeedTag values, all free by default.
class SeedMask {
public:
  SeedMask() = default;

  SeedMask(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1)
      throw DimensionError("SeedMask: rows and cols must be >= 1, got " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    tags_.assign(static_cast<std::size_t>(rows) * cols, SeedTag::free);
  }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  SeedTag operator()(int i, int j) const noexcept {
    return tags_[static_cast<std::size_t>(i) * cols_ + j];
  }
  SeedTag& operator()(int i, int j) noexcept {
    return tags_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const SeedTag* data() const noexcept { return tags_.data(); }

  bool any_pins() const noexcept {
    for (SeedTag t : tags_)
      if (t != SeedTag::free) return true;
    return false;
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<SeedTag> tags_;
};

/// Unweighted l2 norm sqrt(sum of squares) over the raw grid values.
double l2_norm(const ScalarField& u);
double l2_norm(const VectorField& xi);

/// Euclidean inner product over the raw grid values.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);

/// Per-cell Euclidean norm of a vector field (d = 1 reduces to |.|).
ScalarField pointwise_euclidean_norms(const VectorField& xi);

/// a*x + y, elementwise; shapes must agree.
ScalarField axpy(double a, const ScalarField& x, const ScalarField& y);
VectorField axpy(double a, const VectorField& x, const VectorField& y);

/// True when every entry is finite (no NaN/Inf).
bool all_finite(const ScalarField& u);
bool all_finite(const VectorField& xi);

}  // namespace pdtv
