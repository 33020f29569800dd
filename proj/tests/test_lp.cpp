#include <gtest/gtest.h>

#include <optional>

#include "reflecto/errors.hpp"
#include "reflecto/lp.hpp"
#include "reflecto/matrix.hpp"
#include "support.hpp"

namespace reflecto {
namespace {

LinearConstraint row(RatVector coeffs, Relation rel, Rational rhs) {
  return {std::move(coeffs), rel, std::move(rhs)};
}

Rational dot(const RatVector& a, const RatVector& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool satisfies(const LinearProgram& lp, const RatVector& x) {
  for (const auto& c : lp.constraints) {
    const Rational lhs = dot(c.coeffs, x);
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  for (std::size_t i = 0; i < lp.bounds.size(); ++i) {
    if (lp.bounds[i].lower && x[i] < *lp.bounds[i].lower) return false;
    if (lp.bounds[i].upper && x[i] > *lp.bounds[i].upper) return false;
  }
  return true;
}

TEST(LpSolve, FixedVariable) {
  LinearProgram lp{1, {1}, {row({1}, Relation::kGreaterEqual, 1), row({1}, Relation::kLessEqual, 1)}, {}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(1));
  EXPECT_EQ(out.solution, (RatVector{1}));
}

TEST(LpSolve, SumAtLeastThree) {
  LinearProgram lp{2, {1, 1}, {row({1, 1}, Relation::kGreaterEqual, 3)}, {{0, {}}, {0, {}}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(3));
  EXPECT_TRUE(satisfies(lp, out.solution));
}

TEST(LpSolve, Unbounded) {
  LinearProgram lp{1, {-1}, {}, {{0, {}}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kUnbounded);
  ASSERT_EQ(out.ray.size(), 1u);
  EXPECT_GT(out.ray[0], Rational(0));
  EXPECT_TRUE(satisfies(lp, out.solution));
}

TEST(LpSolve, Infeasible) {
  LinearProgram lp{1, {1}, {row({1}, Relation::kGreaterEqual, 2)}, {{0, 1}}};
  EXPECT_EQ(lp_solve(lp).status, LpStatus::kInfeasible);
}

TEST(LpSolve, FreeAndUpperBoundedVariables) {
  // min x - y, x free with x >= -5 via a row, y <= 2
  LinearProgram lp{2, {1, -1}, {row({1, 0}, Relation::kGreaterEqual, -5)}, {{}, {{}, 2}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(-7));
  EXPECT_EQ(out.solution, (RatVector{-5, 2}));
}

TEST(LpSolve, RedundantEqualities) {
  LinearProgram lp{3,
                   {1, 2, 3},
                   {row({1, 1, 1}, Relation::kEqual, 1), row({2, 2, 2}, Relation::kEqual, 2),
                    row({1, -1, 0}, Relation::kEqual, 0)},
                   {{0, {}}, {0, {}}, {0, {}}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(3, 2));
  EXPECT_TRUE(satisfies(lp, out.solution));
}

TEST(LpSolve, PureFeasibility) {
  LinearProgram lp{2, {}, {row({1, 1}, Relation::kLessEqual, 1)}, {{0, {}}, {0, {}}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(0));
}

TEST(LpSolve, RejectsMalformed) {
  LinearProgram lp{2, {1}, {}, {}};
  EXPECT_THROW(lp_solve(lp), InvalidInput);
  LinearProgram lp2{2, {}, {row({1}, Relation::kEqual, 0)}, {}};
  EXPECT_THROW(lp_solve(lp2), InvalidInput);
}

TEST(LpSolve, Degenerate) {
  // Classic cycling example under the largest-coefficient rule.
  LinearProgram lp{4,
                   {Rational(-3, 4), 150, Rational(-1, 50), 6},
                   {row({Rational(1, 4), -60, Rational(-1, 25), 9}, Relation::kLessEqual, 0),
                    row({Rational(1, 2), -90, Rational(-1, 50), 3}, Relation::kLessEqual, 0),
                    row({0, 0, 1, 0}, Relation::kLessEqual, 1)},
                   {{0, {}}, {0, {}}, {0, {}}, {0, {}}}};
  const LpOutcome out = lp_solve(lp);
  ASSERT_EQ(out.status, LpStatus::kOptimal);
  EXPECT_EQ(out.optimum, Rational(-1, 20));
}

// Vertex enumeration for two variables inside the box [-4, 4]^2.
std::optional<Rational> brute_force_2d(const LinearProgram& lp) {
  std::vector<LinearConstraint> lines = lp.constraints;
  for (int v = 0; v < 2; ++v) {
    RatVector e{0, 0};
    e[static_cast<std::size_t>(v)] = 1;
    lines.push_back(row(e, Relation::kLessEqual, 4));
    lines.push_back(row(e, Relation::kGreaterEqual, -4));
  }
  LinearProgram boxed = lp;
  boxed.constraints = lines;
  std::optional<Rational> best;
  for (std::size_t a = 0; a < lines.size(); ++a) {
    for (std::size_t b = a + 1; b < lines.size(); ++b) {
      const RatMatrix m{{lines[a].coeffs[0], lines[a].coeffs[1]},
                        {lines[b].coeffs[0], lines[b].coeffs[1]}};
      if (mat_det(m).is_zero()) continue;
      const RatMatrix inv = mat_inv(m);
      const RatVector rhs{lines[a].rhs, lines[b].rhs};
      const RatVector x = inv * std::span<const Rational>(rhs);
      if (!satisfies(boxed, x)) continue;
      const Rational val = dot(lp.objective, x);
      if (!best || val < *best) best = val;
    }
  }
  return best;
}

TEST(LpProperty, MatchesVertexEnumeration) {
  testing::Gen gen(404);
  for (int n = 0; n < 300; ++n) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {gen.signed_small(3), gen.signed_small(3)};
    for (int c = 0; c < 2; ++c) {
      RatVector e{0, 0};
      e[static_cast<std::size_t>(c)] = 1;
      lp.constraints.push_back(row(e, Relation::kLessEqual, 4));
      lp.constraints.push_back(row(e, Relation::kGreaterEqual, -4));
    }
    const auto extra = gen.integer(1, 4);
    for (int c = 0; c < extra; ++c) {
      const auto rel = static_cast<Relation>(gen.integer(0, 2));
      lp.constraints.push_back(
          row({gen.signed_small(3), gen.signed_small(3)}, rel, gen.signed_small(4)));
    }
    const LpOutcome out = lp_solve(lp);
    const auto expected = brute_force_2d(lp);
    if (!expected) {
      EXPECT_EQ(out.status, LpStatus::kInfeasible) << "instance " << n;
      continue;
    }
    ASSERT_EQ(out.status, LpStatus::kOptimal) << "instance " << n;
    EXPECT_EQ(out.optimum, *expected) << "instance " << n;
    EXPECT_TRUE(satisfies(lp, out.solution));
    EXPECT_EQ(dot(lp.objective, out.solution), out.optimum);
  }
}

TEST(LpProperty, PermutedConstraintsSameOptimum) {
  testing::Gen gen(505);
  for (int n = 0; n < 150; ++n) {
    const auto vars = static_cast<std::size_t>(gen.integer(2, 5));
    LinearProgram lp;
    lp.num_vars = vars;
    for (std::size_t v = 0; v < vars; ++v) {
      lp.objective.push_back(gen.signed_small(4));
      lp.bounds.push_back({gen.coin(70) ? std::optional<Rational>(0) : std::nullopt,
                           gen.coin(50) ? std::optional<Rational>(gen.positive()) : std::nullopt});
    }
    const auto rows = gen.integer(1, 6);
    for (int r = 0; r < rows; ++r) {
      RatVector coeffs;
      for (std::size_t v = 0; v < vars; ++v) coeffs.push_back(gen.signed_small(3));
      lp.constraints.push_back(
          row(coeffs, static_cast<Relation>(gen.integer(0, 2)), gen.signed_small(5)));
    }
    const LpOutcome first = lp_solve(lp);
    const LpOutcome again = lp_solve(lp);
    EXPECT_EQ(first.status, again.status);
    EXPECT_EQ(first.solution, again.solution);
    LinearProgram shuffled = lp;
    gen.shuffle(shuffled.constraints);
    const LpOutcome other = lp_solve(shuffled);
    ASSERT_EQ(first.status, other.status) << "instance " << n;
    if (first.status == LpStatus::kOptimal) {
      EXPECT_EQ(first.optimum, other.optimum);
      EXPECT_TRUE(satisfies(lp, first.solution));
      EXPECT_TRUE(satisfies(lp, other.solution));
    }
    if (first.status == LpStatus::kUnbounded) {
      EXPECT_TRUE(satisfies(lp, first.solution));
      EXPECT_LT(dot(lp.objective, first.ray), Rational(0));
      RatVector far = first.solution;
      for (std::size_t v = 0; v < vars; ++v) far[v] += Rational(1000) * first.ray[v];
      EXPECT_TRUE(satisfies(lp, far));
    }
  }
}

}  // namespace
}  // namespace reflecto
