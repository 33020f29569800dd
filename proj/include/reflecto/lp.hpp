#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reflecto/rational.hpp"

namespace reflecto {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  RatVector coeffs;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// Missing bounds mean the variable is unrestricted in that direction.
struct VariableBounds {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// minimize objective . x subject to the constraints and variable bounds.
struct LinearProgram {
  std::size_t num_vars = 0;
  RatVector objective;  // empty: zero objective (pure feasibility)
  std::vector<LinearConstraint> constraints;
  std::vector<VariableBounds> bounds;  // empty: every variable free

  /// Throws InvalidInput when a vector length disagrees with num_vars.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  Rational optimum;
  // Optimal: an optimal vertex. Unbounded: a feasible point from which
  // `ray` is an improving direction that never leaves the feasible set.
  RatVector solution;
  RatVector ray;
};

/// Exact two-phase primal simplex on a dense rational tableau with Bland's
/// least-index rule, so the pivot sequence is a pure function of the input.
LpOutcome lp_solve(const LinearProgram& prob);

std::string to_string(LpStatus status);

}  // namespace reflecto
