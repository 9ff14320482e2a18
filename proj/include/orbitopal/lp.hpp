#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbitopal {

enum class RowSense { le, ge, eq };

enum class LPStatus { optimal, infeasible, unbounded, numerical_failure };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
    case LPStatus::numerical_failure: return "numerical_failure";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::numerical_failure;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t iterations = 0;
  double max_residual = 0.0;
  std::string diagnostics;
};

struct LPTolerances {
  double feasibility = 1e-7;
  double optimality = 1e-9;
  double pivot = 1e-9;
  std::size_t degenerate_before_bland = 5000;
  std::size_t refactor_every = 100;
};

inline constexpr double kIntegralityTolerance = 1e-6;

// Bounded-variable primal simplex on a dense tableau. Every row
//   sum_j a_j x_j  (<= | >= | =)  b
// gets a logical variable r = a.x whose bounds encode the sense, so the
// constraint matrix is [A | -I] with right-hand side zero and the slack basis
// is always available. Phase 1 minimises the sum of bound violations of the
// basic variables; phase 2 minimises c.x. The tableau and basis are kept
// between solves: bound changes and appended rows reuse them.
class LPModel {
 public:
  using Terms = std::vector<std::pair<std::size_t, double>>;

  explicit LPModel(LPTolerances tol = {}) : tol_(tol) {}

  std::size_t num_variables() const { return var_col_.size(); }
  std::size_t num_rows() const { return rows_.size(); }

  std::size_t add_variable(double lb, double ub, double cost) {
    if (!std::isfinite(lb) || !std::isfinite(ub) || lb > ub)
      throw std::invalid_argument("variables need finite bounds lb <= ub");
    Column c;
    c.lb = lb;
    c.ub = ub;
    c.cost = cost;
    c.value = lb;
    const std::size_t col = cols_.size();
    cols_.push_back(c);
    for (auto& row : tab_) row.push_back(0.0);
    var_col_.push_back(col);
    invalidate();
    return var_col_.size() - 1;
  }

  void set_cost(std::size_t var, double cost) { cols_.at(var_col_.at(var)).cost = cost; }
  double cost(std::size_t var) const { return cols_.at(var_col_.at(var)).cost; }

  void set_bounds(std::size_t var, double lb, double ub) {
    if (!std::isfinite(lb) || !std::isfinite(ub) || lb > ub) throw std::invalid_argument("bad bounds");
    Column& c = cols_.at(var_col_.at(var));
    c.lb = lb;
    c.ub = ub;
  }
  double lower(std::size_t var) const { return cols_.at(var_col_.at(var)).lb; }
  double upper(std::size_t var) const { return cols_.at(var_col_.at(var)).ub; }

  std::size_t add_row(const Terms& terms, RowSense sense, double rhs) {
    Row row;
    for (auto [v, a] : terms) {
      if (v >= num_variables()) throw std::out_of_range("row term refers to an unknown variable");
      if (a != 0.0) row.terms.emplace_back(v, a);
    }
    row.sense = sense;
    row.rhs = rhs;
    Column logical;
    logical.lb = sense == RowSense::le ? -kInf : rhs;
    logical.ub = sense == RowSense::ge ? kInf : rhs;
    logical.row = static_cast<long>(rows_.size());
    const std::size_t col = cols_.size();
    cols_.push_back(logical);
    for (auto& r : tab_) r.push_back(0.0);
    row.logical = col;
    rows_.push_back(std::move(row));

    if (!valid_) return rows_.size() - 1;
    // Express the new row in the current basis: start from [a | -e_new] and
    // eliminate the basic columns, then scale so the logical has +1.
    std::vector<double> t(cols_.size(), 0.0);
    for (auto [v, a] : rows_.back().terms) t[var_col_[v]] += a;
    t[col] = -1.0;
    for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
      const double f = t[basis_[pos]];
      if (f == 0.0) continue;
      const auto& tr = tab_[pos];
      for (std::size_t j = 0; j < t.size(); ++j) t[j] -= f * tr[j];
      t[basis_[pos]] = 0.0;
    }
    for (double& v : t) v = -v;
    tab_.push_back(std::move(t));
    basis_.push_back(col);
    cols_[col].basic_pos = static_cast<long>(basis_.size() - 1);
    return rows_.size() - 1;
  }

  // Deletes a row. The warm start survives when the row's logical is basic.
  void remove_row(std::size_t r) {
    if (r >= rows_.size()) throw std::out_of_range("row index out of range");
    const std::size_t col = rows_[r].logical;
    const long pos = cols_[col].basic_pos;
    if (valid_ && pos >= 0) {
      tab_.erase(tab_.begin() + pos);
      basis_.erase(basis_.begin() + pos);
    } else {
      invalidate();
    }
    rows_.erase(rows_.begin() + static_cast<long>(r));
    cols_.erase(cols_.begin() + static_cast<long>(col));
    for (auto& tr : tab_) tr.erase(tr.begin() + static_cast<long>(col));
    for (auto& c : var_col_)
      if (c > col) --c;
    for (auto& rw : rows_)
      if (rw.logical > col) --rw.logical;
    for (std::size_t k = 0; k < rows_.size(); ++k) cols_[rows_[k].logical].row = static_cast<long>(k);
    for (auto& b : basis_)
      if (b > col) --b;
    for (auto& c : cols_) c.basic_pos = -1;
    for (std::size_t p = 0; p < basis_.size(); ++p) cols_[basis_[p]].basic_pos = static_cast<long>(p);
  }

  // Value of the row's left-hand side a.x at the given point.
  double row_activity(std::size_t r, const std::vector<double>& x) const {
    double s = 0.0;
    for (auto [v, a] : rows_.at(r).terms) s += a * x.at(v);
    return s;
  }
  const Terms& row_terms(std::size_t r) const { return rows_.at(r).terms; }
  RowSense row_sense(std::size_t r) const { return rows_.at(r).sense; }
  double row_rhs(std::size_t r) const { return rows_.at(r).rhs; }

  // Whether the row's logical is basic (the row may be slack) in the last basis.
  bool row_basic(std::size_t r) const { return valid_ && cols_[rows_.at(r).logical].basic_pos >= 0; }

  void invalidate() { valid_ = false; }

  LPSolution solve() {
    LPSolution sol;
    if (!valid_) slack_basis();
    for (auto& c : cols_) {
      if (c.basic_pos >= 0) continue;
      if (c.at_upper && std::isfinite(c.ub))
        c.value = c.ub;
      else {
        c.at_upper = !std::isfinite(c.lb);
        c.value = c.at_upper ? c.ub : c.lb;
      }
    }
    recompute_basics();

    bland_ = tol_.degenerate_before_bland == 0;
    degenerate_ = 0;
    since_refactor_ = 0;
    for (int attempt = 0; attempt < 3; ++attempt) {
      const LPStatus st = iterate(sol);
      if (st == LPStatus::numerical_failure && attempt < 2) {
        slack_basis();
        recompute_basics();
        continue;
      }
      if (st != LPStatus::optimal) {
        sol.status = st;
        return finish(sol);
      }
      if (drift() <= kDriftTolerance && max_infeasibility() <= tol_.feasibility) {
        sol.status = LPStatus::optimal;
        return finish(sol);
      }
      // accumulated round-off: rebuild the tableau from the rows and go on
      if (!refactor()) {
        sol.status = LPStatus::numerical_failure;
        sol.diagnostics = "singular basis during refactorisation";
        return finish(sol);
      }
      recompute_basics();
    }
    sol.status = LPStatus::numerical_failure;
    sol.diagnostics = "basic solution stays inaccurate after refactorisation";
    return finish(sol);
  }

  // Plain-text dump of the current tableau for debugging.
  void dump(std::ostream& os) const {
    os << "tableau " << basis_.size() << " x " << cols_.size() << (valid_ ? "" : " (invalid)") << '\n';
    for (std::size_t pos = 0; pos < basis_.size() && valid_; ++pos) {
      os << "basic " << basis_[pos] << " = " << cols_[basis_[pos]].value << " :";
      for (double v : tab_[pos]) os << ' ' << v;
      os << '\n';
    }
    for (std::size_t c = 0; c < cols_.size(); ++c)
      os << "col " << c << " [" << cols_[c].lb << ", " << cols_[c].ub << "] value " << cols_[c].value
         << (cols_[c].basic_pos >= 0 ? " basic" : (cols_[c].at_upper ? " at upper" : " at lower")) << '\n';
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  static constexpr double kDriftTolerance = 1e-9;

  struct Column {
    double lb = 0.0, ub = 0.0, cost = 0.0, value = 0.0;
    long basic_pos = -1;
    bool at_upper = false;
    long row = -1;  // owning row for logicals
  };
  struct Row {
    Terms terms;
    RowSense sense = RowSense::le;
    double rhs = 0.0;
    std::size_t logical = 0;
  };

  void slack_basis() {
    const std::size_t n = cols_.size();
    tab_.assign(rows_.size(), std::vector<double>(n, 0.0));
    basis_.assign(rows_.size(), 0);
    for (auto& c : cols_) c.basic_pos = -1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (auto [v, a] : rows_[r].terms) tab_[r][var_col_[v]] -= a;
      tab_[r][rows_[r].logical] = 1.0;
      basis_[r] = rows_[r].logical;
      cols_[rows_[r].logical].basic_pos = static_cast<long>(r);
    }
    for (auto& c : cols_) {
      if (c.basic_pos >= 0) continue;
      c.at_upper = false;
      c.value = c.lb;
    }
    valid_ = true;
  }

  // Rebuild B^-1 [A | -I] from the original rows for the current basis.
  bool refactor() {
    const std::size_t m = rows_.size(), n = cols_.size();
    std::vector<std::vector<double>> mat(m, std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
      for (auto [v, a] : rows_[r].terms) mat[r][var_col_[v]] += a;
      mat[r][rows_[r].logical] = -1.0;
    }
    std::vector<char> used(m, 0);
    std::vector<std::size_t> row_of(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t col = basis_[k];
      std::size_t best = m;
      double mag = 0.0;
      for (std::size_t r = 0; r < m; ++r)
        if (!used[r] && std::abs(mat[r][col]) > mag) {
          mag = std::abs(mat[r][col]);
          best = r;
        }
      if (best == m || mag < 1e-11) return false;
      used[best] = 1;
      row_of[k] = best;
      const double inv = 1.0 / mat[best][col];
      for (double& v : mat[best]) v *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == best) continue;
        const double f = mat[r][col];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) mat[r][j] -= f * mat[best][j];
      }
    }
    std::vector<std::vector<double>> t(m);
    for (std::size_t k = 0; k < m; ++k) t[k] = std::move(mat[row_of[k]]);
    tab_ = std::move(t);
    for (std::size_t k = 0; k < m; ++k) tab_[k][basis_[k]] = 1.0;
    since_refactor_ = 0;
    return true;
  }

  // Largest |a.x - r| over the rows at the current values.
  double drift() const {
    double worst = 0.0;
    for (const Row& r : rows_) {
      double act = 0.0;
      for (auto [v, a] : r.terms) act += a * cols_[var_col_[v]].value;
      worst = std::max(worst, std::abs(act - cols_[r.logical].value));
    }
    return worst;
  }

  void recompute_basics() {
    for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
      double v = 0.0;
      const auto& tr = tab_[pos];
      for (std::size_t j = 0; j < cols_.size(); ++j)
        if (cols_[j].basic_pos < 0 && tr[j] != 0.0) v -= tr[j] * cols_[j].value;
      cols_[basis_[pos]].value = v;
    }
  }

  double violation(const Column& c) const {
    if (c.value < c.lb) return c.lb - c.value;
    if (c.value > c.ub) return c.value - c.ub;
    return 0.0;
  }

  double max_infeasibility() const {
    double worst = 0.0;
    for (std::size_t b : basis_) worst = std::max(worst, violation(cols_[b]));
    return worst;
  }

  void pivot(std::size_t r, std::size_t j) {
    auto& pr = tab_[r];
    const double inv = 1.0 / pr[j];
    nz_.clear();
    for (std::size_t c = 0; c < pr.size(); ++c) {
      if (pr[c] == 0.0) continue;
      pr[c] *= inv;
      nz_.push_back(c);
    }
    pr[j] = 1.0;
    for (std::size_t k = 0; k < tab_.size(); ++k) {
      if (k == r) continue;
      const double f = tab_[k][j];
      if (f == 0.0) continue;
      auto& tk = tab_[k];
      for (std::size_t c : nz_) tk[c] -= f * pr[c];
      tk[j] = 0.0;
    }
    const std::size_t leaving = basis_[r];
    cols_[leaving].basic_pos = -1;
    basis_[r] = j;
    cols_[j].basic_pos = static_cast<long>(r);
  }

  LPStatus iterate(LPSolution& sol) {
    const std::size_t limit = 200 * (cols_.size() + rows_.size()) + 20000;
    std::vector<double> g(basis_.size()), d;
    while (true) {
      if (sol.iterations > limit) {
        sol.diagnostics = "iteration limit reached";
        return LPStatus::numerical_failure;
      }
      if (since_refactor_ >= tol_.refactor_every) {
        since_refactor_ = 0;
        if (drift() > kDriftTolerance && !refactor()) {
          sol.diagnostics = "singular basis during refactorisation";
          return LPStatus::numerical_failure;
        }
        recompute_basics();
      }
      // Phase 1 while any basic variable violates its bounds.
      bool phase1 = false;
      for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
        const Column& c = cols_[basis_[pos]];
        g[pos] = 0.0;
        if (c.value < c.lb - tol_.feasibility) g[pos] = -1.0, phase1 = true;
        if (c.value > c.ub + tol_.feasibility) g[pos] = 1.0, phase1 = true;
      }
      if (!phase1)
        for (std::size_t pos = 0; pos < basis_.size(); ++pos) g[pos] = cols_[basis_[pos]].cost;

      // Pricing: d = c_N - g^T T, accumulated row by row.
      d.assign(cols_.size(), 0.0);
      if (!phase1)
        for (std::size_t j = 0; j < cols_.size(); ++j) d[j] = cols_[j].cost;
      for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
        if (g[pos] == 0.0) continue;
        const double gp = g[pos];
        const auto& tr = tab_[pos];
        for (std::size_t j = 0; j < d.size(); ++j) d[j] -= gp * tr[j];
      }
      std::size_t enter = cols_.size();
      int dir = 0;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        const Column& c = cols_[j];
        if (c.basic_pos >= 0 || c.lb == c.ub) continue;
        int dj = 0;
        if (d[j] < -tol_.optimality && c.value < c.ub) dj = 1;
        if (d[j] > tol_.optimality && c.value > c.lb) dj = -1;
        if (!dj) continue;
        if (bland_) {
          enter = j;
          dir = dj;
          break;
        }
        if (std::abs(d[j]) > best) {
          best = std::abs(d[j]);
          enter = j;
          dir = dj;
        }
      }
      if (enter == cols_.size()) {
        if (phase1) {
          sol.diagnostics = "phase 1 ended with positive infeasibility";
          return LPStatus::infeasible;
        }
        return LPStatus::optimal;
      }

      // Ratio test in two passes. The first finds the largest step that keeps
      // every blocking variable within its bound plus the feasibility
      // tolerance, the second takes the largest pivot among the rows that
      // block within that step.
      const Column& ce = cols_[enter];
      double theta = ce.ub - ce.lb;
      blocks_.clear();
      for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
        const double rate = -tab_[pos][enter] * dir;
        if (std::abs(rate) < tol_.pivot) continue;
        const Column& c = cols_[basis_[pos]];
        Block b{pos, kInf, kInf, false, std::abs(rate)};
        const bool below = c.value < c.lb - tol_.feasibility;
        const bool above = c.value > c.ub + tol_.feasibility;
        if (rate > 0) {
          if (below) {
            b.lim = b.relaxed = (c.lb - c.value) / rate;
          } else if (!above && std::isfinite(c.ub)) {
            b.lim = std::max(0.0, (c.ub - c.value) / rate);
            b.relaxed = std::max(0.0, (c.ub + tol_.feasibility - c.value) / rate);
            b.to_upper = true;
          }
        } else {
          if (above) {
            b.lim = b.relaxed = (c.value - c.ub) / -rate;
            b.to_upper = true;
          } else if (!below && std::isfinite(c.lb)) {
            b.lim = std::max(0.0, (c.value - c.lb) / -rate);
            b.relaxed = std::max(0.0, (c.value + tol_.feasibility - c.lb) / -rate);
          }
        }
        if (b.lim == kInf) continue;
        theta = std::min(theta, b.relaxed);
        blocks_.push_back(b);
      }
      if (theta == kInf) {
        sol.diagnostics = "unbounded direction";
        return phase1 ? LPStatus::numerical_failure : LPStatus::unbounded;
      }
      std::size_t leave = basis_.size();
      bool leave_to_upper = false;
      double step = ce.ub - ce.lb;
      if (!(step <= theta)) {
        const Block* pick = nullptr;
        for (const Block& b : blocks_) {
          if (b.lim > theta) continue;
          if (!pick || (bland_ ? basis_[b.pos] < basis_[pick->pos] : b.mag > pick->mag)) pick = &b;
        }
        leave = pick->pos;
        leave_to_upper = pick->to_upper;
        step = pick->lim;
      }

      ++sol.iterations;
      // Bland's rule after a run of degenerate pivots, until the next step
      // that makes progress.
      if (step < 1e-12) {
        if (++degenerate_ >= tol_.degenerate_before_bland) bland_ = true;
      } else {
        degenerate_ = 0;
        bland_ = tol_.degenerate_before_bland == 0;
      }
      for (std::size_t pos = 0; pos < basis_.size(); ++pos) {
        const double rate = -tab_[pos][enter] * dir;
        if (rate != 0.0) cols_[basis_[pos]].value += rate * step;
      }
      Column& e = cols_[enter];
      e.value += dir * step;
      if (leave == basis_.size()) {
        // bound flip
        e.at_upper = dir > 0;
        e.value = e.at_upper ? e.ub : e.lb;
        continue;
      }
      Column& l = cols_[basis_[leave]];
      l.at_upper = leave_to_upper;
      l.value = leave_to_upper ? l.ub : l.lb;
      pivot(leave, enter);
      ++since_refactor_;
    }
  }

  LPSolution& finish(LPSolution& sol) const {
    sol.x.assign(var_col_.size(), 0.0);
    sol.objective = 0.0;
    for (std::size_t v = 0; v < var_col_.size(); ++v) {
      const Column& c = cols_[var_col_[v]];
      sol.x[v] = std::clamp(c.value, c.lb, c.ub);
      sol.objective += c.cost * sol.x[v];
    }
    sol.max_residual = 0.0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const double act = row_activity(r, sol.x);
      double res = 0.0;
      if (rows_[r].sense != RowSense::ge) res = std::max(res, act - rows_[r].rhs);
      if (rows_[r].sense != RowSense::le) res = std::max(res, rows_[r].rhs - act);
      sol.max_residual = std::max(sol.max_residual, res);
    }
    if (sol.status == LPStatus::optimal && sol.max_residual > tol_.feasibility) {
      sol.status = LPStatus::numerical_failure;
      sol.diagnostics = "constraint residual " + std::to_string(sol.max_residual) + " above tolerance";
    }
    return sol;
  }

  LPTolerances tol_;
  std::vector<Column> cols_;
  std::vector<std::size_t> var_col_;
  std::vector<Row> rows_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
  struct Block {
    std::size_t pos;
    double lim, relaxed;
    bool to_upper;
    double mag;
  };
  std::vector<Block> blocks_;
  bool valid_ = false;
  bool bland_ = false;
  std::size_t degenerate_ = 0;
  std::size_t since_refactor_ = 0;
};

inline LPSolution solve_lp(LPModel& model) { return model.solve(); }

inline bool is_fractional(double v, double lb = 0.0, double ub = 1.0) {
  return v > lb + kIntegralityTolerance && v < ub - kIntegralityTolerance;
}

}  // namespace orbitopal
