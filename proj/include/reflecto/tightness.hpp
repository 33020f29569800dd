#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reflecto/lp.hpp"
#include "reflecto/matrix.hpp"
#include "reflecto/matrix_classes.hpp"

namespace reflecto {

/// Subset of {0, ..., d-1} stored as a bit mask. Rendered 1-based.
class IndexSet {
 public:
  constexpr IndexSet() = default;
  constexpr explicit IndexSet(std::uint32_t mask) : mask_(mask) {}
  static IndexSet of(std::initializer_list<std::size_t> members);
  static IndexSet full(std::size_t d) { return IndexSet((1u << d) - 1u); }

  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1u; }
  IndexSet with(std::size_t i) const { return IndexSet(mask_ | (1u << i)); }
  IndexSet without(std::size_t i) const { return IndexSet(mask_ & ~(1u << i)); }
  std::vector<std::size_t> members() const;

  /// "{1,3}" for the 0-based members {0,2}; "{}" when empty.
  std::string to_string() const;

  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::uint32_t mask_ = 0;
};

/// A variable of the tightness system: x_D (plain) or x_D^(j) (boundary).
struct VarIndex {
  enum class Kind { kPlain, kBoundary };

  Kind kind = Kind::kPlain;
  IndexSet set;
  std::size_t j = 0;  // boundary direction, 0-based; unused for kPlain

  static VarIndex plain(IndexSet d) { return {Kind::kPlain, d, 0}; }
  /// Canonical boundary variable: j is removed from D.
  static VarIndex boundary(std::size_t j, IndexSet d) {
    return {Kind::kBoundary, d.without(j), j};
  }
  /// Boundary variable exactly as written, possibly with j in D.
  static VarIndex boundary_alias(std::size_t j, IndexSet d) {
    return {Kind::kBoundary, d, j};
  }

  bool is_canonical() const { return kind == Kind::kPlain || !set.contains(j); }
  VarIndex canonical() const {
    return kind == Kind::kPlain ? *this : boundary(j, set);
  }

  /// "x{1,3}" or "x{1,3}^(2)".
  std::string key() const;

  friend auto operator<=>(const VarIndex&, const VarIndex&) = default;
};

/// Parses a key produced by VarIndex::key(). Throws ParseError.
VarIndex parse_var_key(std::string_view key);

using Assignment = std::map<VarIndex, Rational>;

enum class RowKind { kBalance, kMonotone };

struct SystemRow {
  RowKind kind;
  std::string id;
  LinearConstraint constraint;
};

struct TightnessSystem {
  std::size_t d = 0;
  RatMatrix r;
  RatVector b;
  bool aux_bounded = true;
  std::vector<VarIndex> variables;  // canonical, constants included
  std::vector<VariableBounds> bounds;
  std::vector<SystemRow> rows;

  std::size_t variable_count() const { return variables.size(); }
  /// Position of a canonical variable. Throws InvalidInput if absent.
  std::size_t position(const VarIndex& v) const;
  /// LP over the system minimizing the sum of all variables.
  LinearProgram to_lp() const;
  Assignment all_ones() const;
  Assignment to_assignment(const RatVector& values) const;

 private:
  friend TightnessSystem build_system(const RatMatrix&, const RatVector&, bool,
                                      const ClassOptions&);
  std::map<VarIndex, std::size_t> index_;
};

/// Builds the balance equations and monotonicity inequalities over the
/// canonical variable set. Every x_D lies in [0,1]; boundary variables lie in
/// [0,1] only when `aux_bounded`, and are otherwise bounded above solely
/// through monotonicity. Empty-set variables are fixed to 1.
/// Throws InvalidInput for nonpositive b or a non-square R.
TightnessSystem build_system(const RatMatrix& r, const RatVector& b,
                             bool aux_bounded = true,
                             const ClassOptions& opts = {});

struct ConstraintCheck {
  std::string id;
  bool passed = false;
};

struct VerificationReport {
  std::vector<ConstraintCheck> checks;
  bool is_all_ones = false;

  bool all_passed() const;
  std::optional<std::string> first_failure() const;
};

/// Checks every constraint exactly. Non-canonical boundary keys in `a` are
/// accepted and must agree with their canonical counterpart.
/// Throws InvalidInput naming the first missing or unknown variable.
VerificationReport verify_assignment(const TightnessSystem& system,
                                     const Assignment& a);

struct TightnessVerdict {
  bool tight = false;
  LpStatus lp_status = LpStatus::kOptimal;
  // LP minimum of the variable sum; for an unbounded LP, the sum at the
  // materialized witness.
  Rational optimum;
  std::size_t variable_count = 0;
  std::optional<Assignment> witness;
};

TightnessVerdict check_tight_system(const RatMatrix& r, const RatVector& b,
                                    bool aux_bounded = true,
                                    const ClassOptions& opts = {});

/// Explicit non-trivial solution for a 2x2 matrix with nonnegative,
/// not-both-zero off-diagonal entries and positive diagonal.
Assignment case_d_witness(const RatMatrix& r, const RatVector& b,
                          const Rational& epsilon);

enum class ProofMethod { kThm1, kThm2, kMMatrix, kD1Trivial };
std::string to_string(ProofMethod m);

struct TightProven {
  ProofMethod method;
};
struct NotTight {
  RatVector b;
  Assignment witness;
};
struct UnknownSampled {
  std::vector<RatVector> tested_b;  // every one produced a tight system
};
using TightMatrixDecision = std::variant<TightProven, NotTight, UnknownSampled>;

struct DecideOptions {
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  bool aux_bounded = true;
  Rational epsilon{1, 2};
  ClassOptions classes;
};

/// Seeded positive vectors with entries u/v, u and v uniform in 1..16.
std::vector<RatVector> sample_b_vectors(std::size_t d, std::size_t count,
                                        std::uint64_t seed);

/// Layered decision: trivial d = 1, the 2x2 sign classification, the
/// lower-Hessenberg sign pattern, M-matrices, then the LP oracle on b = 1
/// and sampled b. Throws NotCompletelyS when R is outside that class.
TightMatrixDecision decide_tight_matrix(const RatMatrix& r,
                                        const DecideOptions& opts = {});

}  // namespace reflecto
