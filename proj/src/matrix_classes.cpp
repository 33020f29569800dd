#include "reflecto/matrix_classes.hpp"

#include <cstdlib>

#include "reflecto/errors.hpp"
#include "reflecto/lp.hpp"

namespace reflecto {

ClassOptions class_options_from_env() {
  ClassOptions opts;
  if (const char* env = std::getenv("REFLECTO_DIM_CAP")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || cap == 0 || cap > 31) {
      throw InvalidInput("REFLECTO_DIM_CAP must be an integer in 1..31, got '" +
                         std::string(env) + "'");
    }
    opts.dim_cap = cap;
  }
  return opts;
}

std::string to_string(Thm1Case c) {
  switch (c) {
    case Thm1Case::kBTightCS:
      return "B_TightCS";
    case Thm1Case::kCTightCS:
      return "C_TightCS";
    case Thm1Case::kDCSNotTight:
      return "D_CSNotTight";
    case Thm1Case::kENotCS:
      return "E_NotCS";
    case Thm1Case::kDiagonalFail:
      return "DiagonalFail";
  }
  return "?";
}

namespace {

void require_square(const RatMatrix& m, const ClassOptions* opts) {
  if (!m.is_square() || m.rows() == 0) {
    throw DimensionError("expected a nonempty square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (opts && m.rows() > opts->dim_cap) {
    throw DimensionError("dimension " + std::to_string(m.rows()) +
                         " exceeds the principal-submatrix cap " +
                         std::to_string(opts->dim_cap));
  }
}

template <typename Pred>
SubsetCheck first_failing_subset(const RatMatrix& m, Pred&& pred) {
  SubsetCheck out;
  for_each_subset_lex(m.rows(), [&](const IndexList& s) {
    if (pred(principal_submatrix(m, s))) return true;
    out.holds = false;
    out.failing_subset = s;
    return false;
  });
  return out;
}

}  // namespace

bool is_s_matrix(const RatMatrix& c) {
  require_square(c, nullptr);
  const std::size_t n = c.rows();
  LinearProgram lp;
  lp.num_vars = n;
  lp.bounds.assign(n, VariableBounds{Rational(0), std::nullopt});
  for (std::size_t i = 0; i < n; ++i) {
    lp.constraints.push_back(
        {RatVector(c.row(i).begin(), c.row(i).end()), Relation::kGreaterEqual, 1});
  }
  return lp_solve(lp).status != LpStatus::kInfeasible;
}

SubsetCheck is_completely_s(const RatMatrix& m, const ClassOptions& opts) {
  require_square(m, &opts);
  return first_failing_subset(m, [](const RatMatrix& c) { return is_s_matrix(c); });
}

SubsetCheck is_p_matrix(const RatMatrix& m, const ClassOptions& opts) {
  require_square(m, &opts);
  return first_failing_subset(
      m, [](const RatMatrix& c) { return mat_det(c).is_positive(); });
}

bool is_m_matrix(const RatMatrix& m, const ClassOptions& opts) {
  require_square(m, &opts);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (i != j && m(i, j).is_positive()) return false;
    }
  }
  return is_p_matrix(m, opts).holds;
}

bool is_positive_definite(const RatMatrix& m) {
  require_square(m, nullptr);
  const RatMatrix sym = m + m.transpose();  // twice the symmetric part
  IndexList leading;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    leading.push_back(k);
    if (!mat_det(principal_submatrix(sym, leading)).is_positive()) return false;
  }
  return true;
}

ClassReport classify(const RatMatrix& m, const ClassOptions& opts) {
  ClassReport report;
  const SubsetCheck cs = is_completely_s(m, opts);
  const SubsetCheck p = is_p_matrix(m, opts);
  report.is_completely_s = cs.holds;
  report.completely_s_failing_subset = cs.failing_subset;
  report.is_p = p.holds;
  report.p_failing_subset = p.failing_subset;
  report.is_m = is_m_matrix(m, opts);
  report.is_positive_definite = is_positive_definite(m);
  return report;
}

Thm1Case thm1_classify(const RatMatrix& r) {
  if (r.rows() != 2 || r.cols() != 2) {
    throw DimensionError("two-dimensional classification needs a 2x2 matrix");
  }
  if (!r(0, 0).is_positive() || !r(1, 1).is_positive()) {
    return Thm1Case::kDiagonalFail;
  }
  const int s12 = r(0, 1).sign();
  const int s21 = r(1, 0).sign();
  if (s12 <= 0 && s21 <= 0) {
    const Rational det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
    return det.is_positive() ? Thm1Case::kBTightCS : Thm1Case::kENotCS;
  }
  if (s12 * s21 < 0) return Thm1Case::kCTightCS;
  return Thm1Case::kDCSNotTight;
}

bool thm2_applicable(const RatMatrix& r, const ClassOptions& opts) {
  require_square(r, &opts);
  const std::size_t d = r.rows();
  for (std::size_t i = 0; i < d; ++i) {
    if (!r(i, i).is_positive()) return false;
    if (i >= 1 && !r(i, i - 1).is_negative()) return false;
    for (std::size_t j = 0; j + 2 <= i; ++j) {
      if (!r(i, j).is_zero()) return false;
    }
  }
  return is_p_matrix(r, opts).holds;
}

}  // namespace reflecto
