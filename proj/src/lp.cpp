#include "reflecto/lp.hpp"

#include <algorithm>
#include <utility>

#include "reflecto/errors.hpp"

namespace reflecto {

void LinearProgram::validate() const {
  if (!objective.empty() && objective.size() != num_vars) {
    throw InvalidInput("objective length " + std::to_string(objective.size()) +
                       " != variable count " + std::to_string(num_vars));
  }
  if (!bounds.empty() && bounds.size() != num_vars) {
    throw InvalidInput("bounds length != variable count");
  }
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    if (constraints[r].coeffs.size() != num_vars) {
      throw InvalidInput("constraint " + std::to_string(r) +
                         " has wrong coefficient count");
    }
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "Optimal";
    case LpStatus::kInfeasible:
      return "Infeasible";
    case LpStatus::kUnbounded:
      return "Unbounded";
  }
  return "?";
}

namespace {

// x_v = offset + sum(coef * y_col) over the nonnegative tableau columns.
struct VarMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> terms;
};

class Tableau {
 public:
  Tableau(std::size_t num_cols) : num_cols_(num_cols) {}

  void add_row(std::vector<Rational> row, std::size_t basic) {
    rows_.push_back(std::move(row));
    basis_.push_back(basic);
  }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t rhs() const { return num_cols_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<Rational>& row(std::size_t i) const { return rows_[i]; }

  void erase_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  // Loads a fresh cost vector and prices out the current basis.
  void set_costs(const std::vector<Rational>& cost) {
    reduced_.assign(num_cols_ + 1, Rational{});
    for (std::size_t j = 0; j < num_cols_; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= num_cols_; ++j) {
        if (!rows_[i][j].is_zero()) reduced_[j] -= cb * rows_[i][j];
      }
    }
  }

  // Objective value of the current basic solution.
  Rational objective() const { return -reduced_[num_cols_]; }

  enum class Result { kOptimal, kUnbounded };

  // Prices with the most negative reduced cost and falls back to Bland's rule
  // after a degenerate pivot, until the next strict improvement. `allowed`
  // masks columns that may enter. On kUnbounded, `entering` names the
  // offending column.
  Result run(const std::vector<bool>& allowed, std::size_t& entering) {
    bool bland = false;
    while (true) {
      std::size_t e = num_cols_;
      for (std::size_t j = 0; j < num_cols_; ++j) {
        if (!allowed[j] || !reduced_[j].is_negative()) continue;
        if (e == num_cols_ || reduced_[j] < reduced_[e]) e = j;
        if (bland) break;
      }
      if (e == num_cols_) return Result::kOptimal;
      std::size_t leave = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!rows_[i][e].is_positive()) continue;
        Rational ratio = rows_[i][num_cols_] / rows_[i][e];
        if (leave == rows_.size() || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          best = std::move(ratio);
          leave = i;
        }
      }
      if (leave == rows_.size()) {
        entering = e;
        return Result::kUnbounded;
      }
      bland = best.is_zero();
      pivot(leave, e);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    std::vector<Rational>& prow = rows_[r];
    if (prow[e] != Rational(1)) {
      const Rational inv = Rational(1) / prow[e];
      for (auto& x : prow) {
        if (!x.is_zero()) x *= inv;
      }
    }
    nonzero_.clear();
    for (std::size_t j = 0; j <= num_cols_; ++j) {
      if (!prow[j].is_zero()) nonzero_.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (target[e].is_zero()) return;
      const Rational f = target[e];
      for (std::size_t j : nonzero_) {
        scratch_ = f * prow[j];
        target[j] -= scratch_;
      }
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    if (!reduced_.empty()) eliminate(reduced_);
    basis_[r] = e;
  }

  // Values of all columns at the current basic solution.
  std::vector<Rational> primal() const {
    std::vector<Rational> y(num_cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      y[basis_[i]] = rows_[i][num_cols_];
    }
    return y;
  }

  // Column direction that increases `e` by one while staying on the
  // current equality system.
  std::vector<Rational> ray(std::size_t e) const {
    std::vector<Rational> dy(num_cols_);
    dy[e] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) dy[basis_[i]] = -rows_[i][e];
    return dy;
  }

 private:
  std::size_t num_cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  std::vector<std::size_t> nonzero_;
  Rational scratch_;
};

RatVector map_back(const std::vector<VarMap>& maps,
                   const std::vector<Rational>& y, bool with_offset) {
  RatVector x(maps.size());
  for (std::size_t v = 0; v < maps.size(); ++v) {
    if (with_offset) x[v] = maps[v].offset;
    for (auto [col, coef] : maps[v].terms) {
      if (coef > 0) {
        x[v] += y[col];
      } else {
        x[v] -= y[col];
      }
    }
  }
  return x;
}

}  // namespace

LpOutcome lp_solve(const LinearProgram& prob) {
  prob.validate();
  const std::size_t n = prob.num_vars;

  // Substitute every original variable by nonnegative columns.
  std::vector<VarMap> maps(n);
  std::size_t num_struct = 0;
  struct UpperRow {
    std::size_t col;
    Rational limit;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t v = 0; v < n; ++v) {
    const VariableBounds b = prob.bounds.empty() ? VariableBounds{} : prob.bounds[v];
    if (b.lower && b.upper && *b.lower > *b.upper) return {LpStatus::kInfeasible, {}, {}, {}};
    if (b.lower && b.upper && *b.lower == *b.upper) {
      maps[v].offset = *b.lower;
    } else if (b.lower && b.upper) {
      // Offset from the upper end; the all-upper point is then the origin.
      maps[v].offset = *b.upper;
      maps[v].terms.push_back({num_struct, -1});
      upper_rows.push_back({num_struct, *b.upper - *b.lower});
      ++num_struct;
    } else if (b.lower) {
      maps[v].offset = *b.lower;
      maps[v].terms.push_back({num_struct++, +1});
    } else if (b.upper) {
      maps[v].offset = *b.upper;
      maps[v].terms.push_back({num_struct++, -1});
    } else {
      maps[v].terms.push_back({num_struct++, +1});
      maps[v].terms.push_back({num_struct++, -1});
    }
  }

  // Rows over structural columns, with rhs normalized to be nonnegative.
  struct Row {
    std::vector<Rational> coeffs;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  rows.reserve(prob.constraints.size() + upper_rows.size());
  for (const auto& c : prob.constraints) {
    Row row{std::vector<Rational>(num_struct), c.relation, c.rhs};
    for (std::size_t v = 0; v < n; ++v) {
      const Rational& a = c.coeffs[v];
      if (a.is_zero()) continue;
      if (!maps[v].offset.is_zero()) row.rhs -= a * maps[v].offset;
      for (auto [col, coef] : maps[v].terms) {
        row.coeffs[col] += coef > 0 ? a : -a;
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& u : upper_rows) {
    Row row{std::vector<Rational>(num_struct), Relation::kLessEqual, u.limit};
    row.coeffs[u.col] = 1;
    rows.push_back(std::move(row));
  }
  // A zero-rhs >= row is negated too, so its slack can start in the basis.
  for (auto& row : rows) {
    if (row.rhs.is_negative() || (row.rhs.is_zero() && row.rel == Relation::kGreaterEqual)) {
      for (auto& a : row.coeffs) a = -a;
      row.rhs = -row.rhs;
      if (row.rel == Relation::kLessEqual) {
        row.rel = Relation::kGreaterEqual;
      } else if (row.rel == Relation::kGreaterEqual) {
        row.rel = Relation::kLessEqual;
      }
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::kEqual) ++num_slack;
    if (row.rel != Relation::kLessEqual) ++num_art;
  }
  const std::size_t art_begin = num_struct + num_slack;
  const std::size_t num_cols = art_begin + num_art;
  Tableau tab(num_cols);
  std::size_t next_slack = num_struct, next_art = art_begin;
  for (auto& row : rows) {
    std::vector<Rational> t(num_cols + 1);
    std::move(row.coeffs.begin(), row.coeffs.end(), t.begin());
    t[num_cols] = row.rhs;
    std::size_t basic = 0;
    switch (row.rel) {
      case Relation::kLessEqual:
        t[next_slack] = 1;
        basic = next_slack++;
        break;
      case Relation::kGreaterEqual:
        t[next_slack++] = -1;
        t[next_art] = 1;
        basic = next_art++;
        break;
      case Relation::kEqual:
        t[next_art] = 1;
        basic = next_art++;
        break;
    }
    tab.add_row(std::move(t), basic);
  }

  std::vector<bool> allowed(num_cols, true);
  std::size_t entering = 0;
  if (num_art > 0) {
    std::vector<Rational> phase1(num_cols);
    for (std::size_t j = art_begin; j < num_cols; ++j) phase1[j] = 1;
    tab.set_costs(phase1);
    tab.run(allowed, entering);  // bounded below by zero
    if (tab.objective().is_positive()) return {LpStatus::kInfeasible, {}, {}, {}};
    // Pivot remaining (zero-valued) artificials out of the basis; rows with
    // no other support are redundant.
    for (std::size_t i = 0; i < tab.num_rows();) {
      if (tab.basis()[i] < art_begin) {
        ++i;
        continue;
      }
      std::size_t col = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (!tab.row(i)[j].is_zero()) {
          col = j;
          break;
        }
      }
      if (col == art_begin) {
        tab.erase_row(i);
      } else {
        tab.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = art_begin; j < num_cols; ++j) allowed[j] = false;
  }

  std::vector<Rational> cost(num_cols);
  Rational constant;
  for (std::size_t v = 0; v < n && !prob.objective.empty(); ++v) {
    const Rational& c = prob.objective[v];
    if (c.is_zero()) continue;
    constant += c * maps[v].offset;
    for (auto [col, coef] : maps[v].terms) cost[col] += coef > 0 ? c : -c;
  }
  tab.set_costs(cost);
  const auto result = tab.run(allowed, entering);

  LpOutcome out;
  out.solution = map_back(maps, tab.primal(), true);
  if (result == Tableau::Result::kUnbounded) {
    out.status = LpStatus::kUnbounded;
    out.ray = map_back(maps, tab.ray(entering), false);
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.optimum = tab.objective() + constant;
  return out;
}

}  // namespace reflecto
