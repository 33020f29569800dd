#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reflecto/matrix.hpp"

namespace reflecto {

/// 0-based, strictly ascending indices of a principal submatrix.
using IndexList = std::vector<std::size_t>;

struct ClassOptions {
  // Largest dimension for which the 2^d principal-submatrix checks run.
  std::size_t dim_cap = 12;
};

/// Reads REFLECTO_DIM_CAP from the environment, falling back to 12.
ClassOptions class_options_from_env();

struct SubsetCheck {
  bool holds = true;
  std::optional<IndexList> failing_subset;  // set iff !holds
};

struct ClassReport {
  bool is_completely_s = false;
  bool is_p = false;
  bool is_m = false;
  bool is_positive_definite = false;
  std::optional<IndexList> completely_s_failing_subset;
  std::optional<IndexList> p_failing_subset;
};

// Sign-pattern cases of the two-dimensional classification. Exactly one
// applies to every 2x2 matrix.
enum class Thm1Case {
  kBTightCS,      // off-diagonals <= 0 and positive determinant
  kCTightCS,      // strictly mixed off-diagonal signs
  kDCSNotTight,   // both off-diagonals >= 0, at least one > 0
  kENotCS,        // off-diagonals <= 0 and determinant <= 0
  kDiagonalFail,  // some diagonal entry <= 0
};

std::string to_string(Thm1Case c);

/// Calls `visit` on every nonempty subset of {0..n-1} in lexicographic order
/// of the ascending index lists ({0}, {0,1}, {0,1,2}, {0,2}, {1}, ...).
/// Stops early when `visit` returns false.
template <typename Visit>
void for_each_subset_lex(std::size_t n, Visit&& visit);

/// true iff some x > 0 has Cx > 0, decided exactly via {x >= 0, Cx >= 1}.
bool is_s_matrix(const RatMatrix& c);

SubsetCheck is_completely_s(const RatMatrix& m, const ClassOptions& opts = {});
SubsetCheck is_p_matrix(const RatMatrix& m, const ClassOptions& opts = {});
bool is_m_matrix(const RatMatrix& m, const ClassOptions& opts = {});

/// Sylvester's criterion on the symmetric part (M + M')/2.
bool is_positive_definite(const RatMatrix& m);

ClassReport classify(const RatMatrix& m, const ClassOptions& opts = {});

/// Throws DimensionError unless `r` is 2x2.
Thm1Case thm1_classify(const RatMatrix& r);

/// P-matrix with positive diagonal, strictly negative first subdiagonal and
/// zeros below it; entries above the diagonal are free.
bool thm2_applicable(const RatMatrix& r, const ClassOptions& opts = {});

// ---------------------------------------------------------------------------

namespace detail {

template <typename Visit>
bool subset_dfs(std::size_t n, IndexList& current, Visit& visit) {
  const std::size_t start = current.empty() ? 0 : current.back() + 1;
  for (std::size_t i = start; i < n; ++i) {
    current.push_back(i);
    if (!visit(static_cast<const IndexList&>(current))) return false;
    if (!subset_dfs(n, current, visit)) return false;
    current.pop_back();
  }
  return true;
}

}  // namespace detail

template <typename Visit>
void for_each_subset_lex(std::size_t n, Visit&& visit) {
  IndexList current;
  detail::subset_dfs(n, current, visit);
}

}  // namespace reflecto
