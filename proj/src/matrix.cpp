#include "reflecto/matrix.hpp"

#include <algorithm>
#include <utility>

#include "reflecto/errors.hpp"

namespace reflecto {

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  entries_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

RatMatrix RatMatrix::diagonal(std::span<const Rational> diag) {
  RatMatrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  return out;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RatMatrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DimensionError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

RatVector RatMatrix::column(std::size_t j) const {
  RatVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix sum shape mismatch");
  }
  RatMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  }
  return out;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix difference shape mismatch");
  }
  RatMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  }
  return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  RatMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

RatVector operator*(const RatMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero() && !x[j].is_zero()) out[i] += a(i, j) * x[j];
    }
  }
  return out;
}

namespace {

using IntGrid = std::vector<std::vector<BigInt>>;

// Scales each row by the lcm of its denominators. Returns the integer rows
// and the per-row scale factors.
std::pair<IntGrid, std::vector<BigInt>> integerize(const RatMatrix& m) {
  IntGrid grid(m.rows(), std::vector<BigInt>(m.cols()));
  std::vector<BigInt> scale(m.rows(), 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BigInt l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
              m(i, j).raw().get_den_mpz_t());
    }
    scale[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      grid[i][j] = m(i, j).raw().get_num() * (l / m(i, j).raw().get_den());
    }
  }
  return {std::move(grid), std::move(scale)};
}

// One Bareiss update: (pivot*x - left*top) / prev, division exact.
void bareiss_update(BigInt& x, const BigInt& pivot, const BigInt& left,
                    const BigInt& top, const BigInt& prev, BigInt& scratch) {
  x *= pivot;
  scratch = left * top;
  x -= scratch;
  mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
}

bool swap_in_pivot(IntGrid& a, std::size_t k) {
  if (a[k][k] != 0) return false;
  for (std::size_t p = k + 1; p < a.size(); ++p) {
    if (a[p][k] != 0) {
      std::swap(a[p], a[k]);
      return true;
    }
  }
  throw SingularMatrix();
}

}  // namespace

Rational mat_det(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto [a, scale] = integerize(m);
  BigInt prev = 1, scratch;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    try {
      if (swap_in_pivot(a, k)) sign = -sign;
    } catch (const SingularMatrix&) {
      return 0;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        bareiss_update(a[i][j], a[k][k], a[i][k], a[k][j], prev, scratch);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  BigInt denom = 1;
  for (const auto& s : scale) denom *= s;
  return Rational(sign * a[n - 1][n - 1], denom);
}

RatMatrix mat_inv(const RatMatrix& m) {
  if (!m.is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto [a, scale] = integerize(m);
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = 1;
  }
  BigInt prev = 1, scratch;
  for (std::size_t k = 0; k < n; ++k) {
    swap_in_pivot(a, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        bareiss_update(a[i][j], a[k][k], a[i][k], a[k][j], prev, scratch);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  // Every diagonal entry now equals the final pivot; the right block holds
  // pivot * inverse of the integerized matrix.
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = Rational(a[i][n + j] * scale[j], a[i][i]);
    }
  }
  return out;
}

RatMatrix principal_submatrix(const RatMatrix& m,
                              std::span<const std::size_t> indices) {
  if (indices.empty()) throw DimensionError("empty index set");
  for (std::size_t t = 0; t < indices.size(); ++t) {
    if (indices[t] >= m.rows() || indices[t] >= m.cols()) {
      throw DimensionError("index " + std::to_string(indices[t] + 1) +
                           " out of range");
    }
    if (t > 0 && indices[t] <= indices[t - 1]) {
      throw DimensionError("index set must be strictly ascending");
    }
  }
  return submatrix(m, indices, indices);
}

RatMatrix submatrix(const RatMatrix& m, std::span<const std::size_t> row_idx,
                    std::span<const std::size_t> col_idx) {
  RatMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      out(i, j) = m(row_idx[i], col_idx[j]);
    }
  }
  return out;
}

std::vector<std::vector<std::string>> to_strings(const RatMatrix& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out[i].push_back(m(i, j).to_string());
    }
  }
  return out;
}

}  // namespace reflecto
