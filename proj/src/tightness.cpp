#include "reflecto/tightness.hpp"

#include <cctype>
#include <random>

#include "reflecto/errors.hpp"

namespace reflecto {

// --- IndexSet / VarIndex ----------------------------------------------------

IndexSet IndexSet::of(std::initializer_list<std::size_t> members) {
  IndexSet s;
  for (std::size_t i : members) s = s.with(i);
  return s;
}

std::vector<std::size_t> IndexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members()) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

std::string VarIndex::key() const {
  std::string out = "x" + set.to_string();
  if (kind == Kind::kBoundary) out += "^(" + std::to_string(j + 1) + ")";
  return out;
}

namespace {

std::size_t parse_index(std::string_view text, std::string_view key) {
  if (text.empty() || text.size() > 2) {
    throw ParseError("bad index in variable key '" + std::string(key) + "'");
  }
  std::size_t value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("bad index in variable key '" + std::string(key) + "'");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  if (value == 0 || value > 31) {
    throw ParseError("index out of range in variable key '" + std::string(key) +
                     "'");
  }
  return value - 1;
}

}  // namespace

VarIndex parse_var_key(std::string_view key) {
  const auto fail = [&]() -> VarIndex {
    throw ParseError("malformed variable key '" + std::string(key) + "'");
  };
  if (key.size() < 3 || key.substr(0, 2) != "x{") return fail();
  const auto close = key.find('}');
  if (close == std::string_view::npos) return fail();
  IndexSet set;
  std::string_view list = key.substr(2, close - 2);
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::size_t idx = parse_index(list.substr(0, comma), key);
    if (!set.empty() && set.members().back() >= idx) return fail();
    set = set.with(idx);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
    if (list.empty()) return fail();
  }
  std::string_view rest = key.substr(close + 1);
  if (rest.empty()) return VarIndex::plain(set);
  if (rest.size() < 4 || rest.substr(0, 2) != "^(" || rest.back() != ')') {
    return fail();
  }
  const std::size_t j = parse_index(rest.substr(2, rest.size() - 3), key);
  return VarIndex::boundary_alias(j, set);
}

// --- system construction -----------------------------------------------------

std::size_t TightnessSystem::position(const VarIndex& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) throw InvalidInput("unknown variable " + v.key());
  return it->second;
}

LinearProgram TightnessSystem::to_lp() const {
  LinearProgram lp;
  lp.num_vars = variables.size();
  lp.objective.assign(variables.size(), Rational(1));
  lp.bounds = bounds;
  lp.constraints.reserve(rows.size());
  for (const auto& row : rows) lp.constraints.push_back(row.constraint);
  return lp;
}

Assignment TightnessSystem::all_ones() const {
  Assignment a;
  for (const auto& v : variables) a.emplace(v, Rational(1));
  return a;
}

Assignment TightnessSystem::to_assignment(const RatVector& values) const {
  Assignment a;
  for (std::size_t k = 0; k < variables.size(); ++k) a.emplace(variables[k], values[k]);
  return a;
}

namespace {

bool row_holds(const LinearConstraint& c, const RatVector& x) {
  Rational lhs;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!c.coeffs[k].is_zero()) lhs += c.coeffs[k] * x[k];
  }
  switch (c.relation) {
    case Relation::kLessEqual:
      return lhs <= c.rhs;
    case Relation::kEqual:
      return lhs == c.rhs;
    case Relation::kGreaterEqual:
      return lhs >= c.rhs;
  }
  return false;
}

}  // namespace

TightnessSystem build_system(const RatMatrix& r, const RatVector& b,
                             bool aux_bounded, const ClassOptions& opts) {
  if (!r.is_square() || r.rows() == 0) {
    throw DimensionError("reflection matrix must be nonempty and square");
  }
  const std::size_t d = r.rows();
  if (d > opts.dim_cap || d > 20) {
    throw DimensionError("dimension " + std::to_string(d) +
                         " exceeds the subset-enumeration cap");
  }
  if (b.size() != d) {
    throw DimensionError("b has length " + std::to_string(b.size()) +
                         ", expected " + std::to_string(d));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!b[j].is_positive()) {
      throw InvalidInput("b[" + std::to_string(j + 1) + "] = " +
                         b[j].to_string() + " is not positive");
    }
  }

  TightnessSystem sys;
  sys.d = d;
  sys.r = r;
  sys.b = b;
  sys.aux_bounded = aux_bounded;
  const std::uint32_t num_sets = 1u << d;

  const auto add_var = [&](VarIndex v, VariableBounds bounds) {
    sys.index_.emplace(v, sys.variables.size());
    sys.variables.push_back(v);
    sys.bounds.push_back(std::move(bounds));
  };
  const VariableBounds unit{Rational(0), Rational(1)};
  const VariableBounds fixed{Rational(1), Rational(1)};
  for (std::uint32_t mask = 0; mask < num_sets; ++mask) {
    add_var(VarIndex::plain(IndexSet(mask)), mask == 0 ? fixed : unit);
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::uint32_t mask = 0; mask < num_sets; ++mask) {
      const IndexSet set(mask);
      if (set.contains(j)) continue;
      VariableBounds bounds = aux_bounded ? unit : VariableBounds{};
      add_var(VarIndex::boundary(j, set), mask == 0 ? fixed : bounds);
    }
  }
  const std::size_t n = sys.variables.size();

  // Balance: sum_j R_ij b_j (x_D^(j) - x_D) = 0 for i in D.
  for (std::uint32_t mask = 1; mask < num_sets; ++mask) {
    const IndexSet set(mask);
    const std::size_t xd = sys.position(VarIndex::plain(set));
    for (std::size_t i : set.members()) {
      LinearConstraint c{RatVector(n), Relation::kEqual, Rational(0)};
      for (std::size_t j = 0; j < d; ++j) {
        const Rational w = r(i, j) * b[j];
        if (w.is_zero()) continue;
        c.coeffs[sys.position(VarIndex::boundary(j, set))] += w;
        c.coeffs[xd] -= w;
      }
      sys.rows.push_back({RowKind::kBalance,
                          "balance D=" + set.to_string() + " i=" +
                              std::to_string(i + 1),
                          std::move(c)});
    }
  }

  // Monotonicity on cover pairs D < D + {m}.
  const auto add_monotone = [&](const VarIndex& hi, const VarIndex& lo) {
    LinearConstraint c{RatVector(n), Relation::kGreaterEqual, Rational(0)};
    c.coeffs[sys.position(hi)] += 1;
    c.coeffs[sys.position(lo)] -= 1;
    sys.rows.push_back(
        {RowKind::kMonotone, "monotone " + hi.key() + ">=" + lo.key(), std::move(c)});
  };
  for (std::uint32_t mask = 0; mask < num_sets; ++mask) {
    const IndexSet set(mask);
    for (std::size_t m = 0; m < d; ++m) {
      if (set.contains(m)) continue;
      add_monotone(VarIndex::plain(set), VarIndex::plain(set.with(m)));
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::uint32_t mask = 0; mask < num_sets; ++mask) {
      const IndexSet set(mask);
      if (set.contains(j)) continue;
      for (std::size_t m = 0; m < d; ++m) {
        if (m == j || set.contains(m)) continue;
        add_monotone(VarIndex::boundary(j, set), VarIndex::boundary(j, set.with(m)));
      }
    }
  }

  const RatVector ones(n, Rational(1));
  for (const auto& row : sys.rows) {
    if (!row_holds(row.constraint, ones)) {
      throw InternalInconsistency("all-ones assignment violates " + row.id);
    }
  }
  return sys;
}

// --- verification -----------------------------------------------------------

bool VerificationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::optional<std::string> VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.id;
  }
  return std::nullopt;
}

VerificationReport verify_assignment(const TightnessSystem& system,
                                     const Assignment& a) {
  const std::size_t n = system.variables.size();
  RatVector x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto it = a.find(system.variables[k]);
    if (it == a.end()) {
      throw InvalidInput("missing variable " + system.variables[k].key());
    }
    x[k] = it->second;
  }

  VerificationReport report;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& bnd = system.bounds[k];
    const std::string key = system.variables[k].key();
    if (bnd.lower && bnd.upper && *bnd.lower == *bnd.upper) {
      report.checks.push_back({"fixed " + key + "=" + bnd.lower->to_string(),
                               x[k] == *bnd.lower});
      continue;
    }
    if (bnd.lower) {
      report.checks.push_back(
          {"bound " + key + ">=" + bnd.lower->to_string(), x[k] >= *bnd.lower});
    }
    if (bnd.upper) {
      report.checks.push_back(
          {"bound " + key + "<=" + bnd.upper->to_string(), x[k] <= *bnd.upper});
    }
  }
  for (const auto& row : system.rows) {
    report.checks.push_back({row.id, row_holds(row.constraint, x)});
  }
  for (const auto& [var, value] : a) {
    if (var.is_canonical()) {
      system.position(var);  // rejects variables foreign to this system
      continue;
    }
    const VarIndex canon = var.canonical();
    const std::size_t k = system.position(canon);
    report.checks.push_back(
        {"identify " + var.key() + "=" + canon.key(), value == x[k]});
  }
  report.is_all_ones = true;
  for (const auto& [var, value] : a) {
    if (value != Rational(1)) report.is_all_ones = false;
  }
  return report;
}

// --- tightness oracle ----------------------------------------------------------

TightnessVerdict check_tight_system(const RatMatrix& r, const RatVector& b,
                                    bool aux_bounded, const ClassOptions& opts) {
  const TightnessSystem sys = build_system(r, b, aux_bounded, opts);
  const LpOutcome lp = lp_solve(sys.to_lp());

  TightnessVerdict verdict;
  verdict.lp_status = lp.status;
  verdict.variable_count = sys.variable_count();
  const Rational count(static_cast<std::int64_t>(sys.variable_count()));
  RatVector point;
  switch (lp.status) {
    case LpStatus::kInfeasible:
      throw InternalInconsistency("tightness LP infeasible despite all-ones point");
    case LpStatus::kOptimal:
      verdict.optimum = lp.optimum;
      if (lp.optimum == count) {
        verdict.tight = true;
        return verdict;
      }
      point = lp.solution;
      break;
    case LpStatus::kUnbounded:
      point = lp.solution;
      for (std::size_t k = 0; k < point.size(); ++k) point[k] += lp.ray[k];
      for (const auto& v : point) verdict.optimum += v;
      break;
  }
  Assignment witness = sys.to_assignment(point);
  const VerificationReport check = verify_assignment(sys, witness);
  if (!check.all_passed() || check.is_all_ones) {
    throw InternalInconsistency("LP witness failed verification at " +
                                check.first_failure().value_or("all-ones"));
  }
  verdict.witness = std::move(witness);
  return verdict;
}

Assignment case_d_witness(const RatMatrix& r, const RatVector& b,
                          const Rational& epsilon) {
  if (thm1_classify(r) != Thm1Case::kDCSNotTight) {
    throw InvalidInput("explicit witness needs nonnegative off-diagonal entries, "
                       "not both zero, and a positive diagonal");
  }
  if (b.size() != 2 || !b[0].is_positive() || !b[1].is_positive()) {
    throw InvalidInput("b must be a positive 2-vector");
  }
  if (!epsilon.is_positive() || epsilon > Rational(1)) {
    throw InvalidInput("epsilon must lie in (0,1]");
  }
  const Rational alpha1 = r(0, 1) * b[1] / (r(0, 0) * b[0]);
  const Rational alpha2 = r(1, 0) * b[0] / (r(1, 1) * b[1]);
  const IndexSet s1 = IndexSet::of({0}), s2 = IndexSet::of({1}),
                 s12 = IndexSet::of({0, 1});
  Assignment a;
  a[VarIndex::plain(IndexSet())] = 1;
  a[VarIndex::plain(s1)] = (epsilon * alpha1 + 1) / (alpha1 + 1);
  a[VarIndex::plain(s2)] = (epsilon * alpha2 + 1) / (alpha2 + 1);
  a[VarIndex::plain(s12)] = epsilon;
  a[VarIndex::boundary(0, IndexSet())] = 1;
  a[VarIndex::boundary(0, s2)] = epsilon;
  a[VarIndex::boundary(1, IndexSet())] = 1;
  a[VarIndex::boundary(1, s1)] = epsilon;
  return a;
}

// --- tight-matrix decision -----------------------------------------------------

std::string to_string(ProofMethod m) {
  switch (m) {
    case ProofMethod::kThm1:
      return "Thm1";
    case ProofMethod::kThm2:
      return "Thm2";
    case ProofMethod::kMMatrix:
      return "MMatrix";
    case ProofMethod::kD1Trivial:
      return "D1Trivial";
  }
  return "?";
}

std::vector<RatVector> sample_b_vectors(std::size_t d, std::size_t count,
                                        std::uint64_t seed) {
  // mt19937_64 output is fully specified and 2^64 is a multiple of 16, so
  // the draws are identical on every platform.
  std::mt19937_64 rng(seed);
  const auto draw = [&] { return static_cast<std::int64_t>(rng() % 16) + 1; };
  std::vector<RatVector> out(count, RatVector(d));
  for (auto& b : out) {
    for (auto& entry : b) {
      const std::int64_t u = draw();
      const std::int64_t v = draw();
      entry = Rational(u, v);
    }
  }
  return out;
}

TightMatrixDecision decide_tight_matrix(const RatMatrix& r,
                                        const DecideOptions& opts) {
  if (!r.is_square() || r.rows() == 0) {
    throw DimensionError("reflection matrix must be nonempty and square");
  }
  const std::size_t d = r.rows();
  if (d == 1) {
    if (!r(0, 0).is_positive()) {
      throw NotCompletelyS("1x1 matrix with nonpositive entry");
    }
    return TightProven{ProofMethod::kD1Trivial};
  }
  if (d == 2) {
    switch (thm1_classify(r)) {
      case Thm1Case::kBTightCS:
      case Thm1Case::kCTightCS:
        return TightProven{ProofMethod::kThm1};
      case Thm1Case::kDCSNotTight: {
        RatVector ones(2, Rational(1));
        Assignment w = case_d_witness(r, ones, opts.epsilon);
        return NotTight{std::move(ones), std::move(w)};
      }
      case Thm1Case::kENotCS:
        throw NotCompletelyS("nonpositive off-diagonal entries with "
                             "nonpositive determinant");
      case Thm1Case::kDiagonalFail:
        throw NotCompletelyS("nonpositive diagonal entry");
    }
  }
  const SubsetCheck cs = is_completely_s(r, opts.classes);
  if (!cs.holds) {
    IndexSet s;
    for (std::size_t i : *cs.failing_subset) s = s.with(i);
    throw NotCompletelyS("principal submatrix " + s.to_string() +
                         " admits no positive vector with positive image");
  }
  if (thm2_applicable(r, opts.classes)) return TightProven{ProofMethod::kThm2};
  if (is_m_matrix(r, opts.classes)) return TightProven{ProofMethod::kMMatrix};

  std::vector<RatVector> tested;
  tested.emplace_back(d, Rational(1));
  for (auto& b : sample_b_vectors(d, opts.samples, opts.seed)) {
    tested.push_back(std::move(b));
  }
  for (const auto& b : tested) {
    TightnessVerdict v = check_tight_system(r, b, opts.aux_bounded, opts.classes);
    if (!v.tight) return NotTight{b, std::move(*v.witness)};
  }
  return UnknownSampled{std::move(tested)};
}

}  // namespace reflecto
