#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "reflecto/rational.hpp"

namespace reflecto {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init);

  static RatMatrix identity(std::size_t n);
  static RatMatrix diagonal(std::span<const Rational> diag);
  /// Builds from a list of equally long rows. Throws DimensionError otherwise.
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Rational& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const Rational> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  RatVector column(std::size_t j) const;

  RatMatrix transpose() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatVector operator*(const RatMatrix& a, std::span<const Rational> x);

/// Exact determinant by fraction-free (Bareiss) elimination.
Rational mat_det(const RatMatrix& m);

/// Exact inverse by fraction-free Gauss-Jordan elimination.
/// Throws SingularMatrix when the determinant vanishes.
RatMatrix mat_inv(const RatMatrix& m);

/// Rows and columns picked from `indices` (0-based, ascending order is
/// enforced). Throws DimensionError on an empty or out-of-range set.
RatMatrix principal_submatrix(const RatMatrix& m,
                              std::span<const std::size_t> indices);

/// Rows `row_idx` and columns `col_idx`, in the given order.
RatMatrix submatrix(const RatMatrix& m, std::span<const std::size_t> row_idx,
                    std::span<const std::size_t> col_idx);

std::vector<std::vector<std::string>> to_strings(const RatMatrix& m);

}  // namespace reflecto
