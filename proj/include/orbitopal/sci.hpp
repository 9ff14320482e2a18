#pragma once

#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbitopal/fixing.hpp"
#include "orbitopal/linear.hpp"

namespace orbitopal {

// Shifted column <1,c_1>, ..., <eta,c_eta> with c_1 <= ... <= c_eta.
struct ShiftedColumn {
  std::vector<int> columns;  // columns[k-1] = c_k

  int length() const { return static_cast<int>(columns.size()); }

  std::vector<CellIndex> cells() const {
    std::vector<CellIndex> out;
    for (int k = 1; k <= length(); ++k) {
      const int c = columns[static_cast<std::size_t>(k - 1)];
      out.push_back({c + k - 1, c});
    }
    return out;
  }

  friend bool operator==(const ShiftedColumn&, const ShiftedColumn&) = default;
};

// Shifted column inequality x(B) - x(S) <= 0 with bar B = {(i,j),...,(i,q(i))}
// anchored at (i,j) = <eta,j>, where eta = |S| and c_eta < j.
struct SCInequality {
  CellIndex anchor;
  ShiftedColumn shifted;

  bool is_column_inequality() const {
    for (int c : shifted.columns)
      if (c != anchor.j - 1) return false;
    return true;
  }

  std::vector<CellIndex> bar(const OrbitopeShape& shape) const {
    std::vector<CellIndex> out;
    for (int j = anchor.j; j <= shape.row_length(anchor.i); ++j) out.push_back({anchor.i, j});
    return out;
  }

  friend bool operator==(const SCInequality&, const SCInequality&) = default;
};

inline bool is_valid_shifted_column(const ShiftedColumn& sc, const OrbitopeShape& shape) {
  int prev = 1;
  for (int c : sc.columns) {
    if (c < prev) return false;
    prev = c;
  }
  for (auto cell : sc.cells())
    if (!shape.contains(cell)) return false;
  return true;
}

inline bool is_valid_sci(const SCInequality& s, const OrbitopeShape& shape) {
  if (!shape.contains(s.anchor) || s.anchor.j < 2) return false;
  const int eta = s.anchor.i - s.anchor.j + 1;
  if (s.shifted.length() != eta || !is_valid_shifted_column(s.shifted, shape)) return false;
  for (int c : s.shifted.columns)
    if (c >= s.anchor.j) return false;
  return true;
}

inline LinearInequality to_linear(const SCInequality& s, const OrbitopeShape& shape) {
  LinearInequality li;
  li.rhs = 0.0;
  for (auto c : s.bar(shape)) li.terms.push_back({shape.index(c), 1.0});
  for (auto c : s.shifted.cells()) li.terms.push_back({shape.index(c), -1.0});
  return li;
}

// x(B) - x(S); positive means violated. x is indexed by the reduced cells.
inline double evaluate(const SCInequality& s, std::span<const double> x, const OrbitopeShape& shape) {
  if (x.size() != shape.cell_count()) throw std::invalid_argument("point dimension does not match shape");
  double v = 0.0;
  for (auto c : s.bar(shape)) v += x[shape.index(c)];
  for (auto c : s.shifted.cells()) v -= x[shape.index(c)];
  return v;
}

// Calls visit(const SCInequality&) for every shifted column inequality of the
// shape (or only the column inequalities).
template <typename Visit>
void for_each_sci(const OrbitopeShape& shape, Visit&& visit, bool column_inequalities_only = false) {
  SCInequality s;
  for (int i = 2; i <= shape.rows(); ++i) {
    for (int j = 2; j <= shape.row_length(i); ++j) {
      const int eta = i - j + 1;
      s.anchor = {i, j};
      if (column_inequalities_only) {
        s.shifted.columns.assign(static_cast<std::size_t>(eta), j - 1);
        visit(std::as_const(s));
        continue;
      }
      s.shifted.columns.assign(static_cast<std::size_t>(eta), 1);
      // Odometer over non-decreasing sequences with values in 1..j-1.
      while (true) {
        visit(std::as_const(s));
        int k = eta - 1;
        while (k >= 0 && s.shifted.columns[static_cast<std::size_t>(k)] == j - 1) --k;
        if (k < 0) break;
        const int v = s.shifted.columns[static_cast<std::size_t>(k)] + 1;
        for (int t = k; t < eta; ++t) s.shifted.columns[static_cast<std::size_t>(t)] = v;
      }
    }
  }
}

inline std::vector<SCInequality> all_scis(const OrbitopeShape& shape, bool column_inequalities_only = false) {
  std::vector<SCInequality> out;
  for_each_sci(shape, [&](const SCInequality& s) { out.push_back(s); }, column_inequalities_only);
  return out;
}

struct ViolatedSCI {
  SCInequality inequality;
  double violation = 0.0;
};

inline constexpr double kSeparationTolerance = 1e-6;

// Exact separation in O(pq). For each diagonal eta and column bound c the
// table holds the minimum of x(S) over shifted columns of length eta whose
// last column is at most c; every anchor (i,j) then needs one lookup at
// (i-j+1, j-1). Returns a most violated inequality if its violation exceeds
// the tolerance.
inline std::optional<ViolatedSCI> separate_sci(std::span<const double> x, const OrbitopeShape& shape,
                                               double tolerance = kSeparationTolerance) {
  if (x.size() != shape.cell_count()) throw std::invalid_argument("point dimension does not match shape");
  const int p = shape.rows();
  const int q = shape.cols();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto width = static_cast<std::size_t>(q);
  // best[eta][c] for eta in 0..p, c in 0..q-1; c = 0 is the empty sentinel.
  std::vector<double> best((static_cast<std::size_t>(p) + 1) * width, inf);
  std::vector<char> take(best.size(), 0);
  auto at = [&](int eta, int c) -> std::size_t { return static_cast<std::size_t>(eta) * width + static_cast<std::size_t>(c); };
  for (int c = 1; c < q; ++c) best[at(0, c)] = 0.0;
  for (int eta = 1; eta <= p; ++eta) {
    for (int c = 1; c < q; ++c) {
      double v = best[at(eta, c - 1)];
      char t = 0;
      if (c + eta - 1 <= p) {
        const double extend = best[at(eta - 1, c)] + x[shape.index(c + eta - 1, c)];
        if (extend < v) {
          v = extend;
          t = 1;
        }
      }
      best[at(eta, c)] = v;
      take[at(eta, c)] = t;
    }
  }

  std::optional<ViolatedSCI> result;
  double most = tolerance;
  for (int i = 2; i <= p; ++i) {
    const int len = shape.row_length(i);
    double bar = 0.0;
    for (int j = len; j >= 2; --j) {
      bar += x[shape.index(i, j)];
      const double violation = bar - best[at(i - j + 1, j - 1)];
      if (violation > most) {
        most = violation;
        ViolatedSCI v;
        v.inequality.anchor = {i, j};
        v.violation = violation;
        result = std::move(v);
      }
    }
  }
  if (result) {
    auto& s = result->inequality;
    int eta = s.anchor.i - s.anchor.j + 1;
    int c = s.anchor.j - 1;
    s.shifted.columns.assign(static_cast<std::size_t>(eta), 0);
    while (eta > 0) {
      if (take[at(eta, c)]) {
        s.shifted.columns[static_cast<std::size_t>(eta - 1)] = c;
        --eta;
      } else {
        --c;
      }
    }
  }
  return result;
}

// Shifted column S_i(I0) = {(k, alpha_k + 1) : k <= i, k not an increase row}.
// It lies inside I0 and certifies that row i cannot go beyond alpha_i.
inline ShiftedColumn build_profile_column(const AlphaProfile& prof, int i, const OrbitopeShape& shape) {
  if (i < 2 || i > prof.rows()) throw std::out_of_range("row outside 2..p");
  if (prof.alpha(i) >= shape.row_length(i))
    throw std::domain_error("profile column needs alpha_i < q(i) in row " + std::to_string(i));
  ShiftedColumn s;
  for (int k = 1; k <= i; ++k)
    if (!prof.in_gamma(k)) s.columns.push_back(prof.alpha(k) + 1);
  return s;
}

// A shifted column inequality whose shifted column lies in I0 and whose bar
// covers the cells of row i beyond alpha_i (for a non-increase row, beyond
// alpha_i + 1; that cell is itself in I0). Empty when nothing needs proving.
inline std::optional<SCInequality> row_bound_certificate(const AlphaProfile& prof, int i, const OrbitopeShape& shape) {
  const int len = shape.row_length(i);
  if (prof.in_gamma(i)) {
    if (prof.alpha(i) >= len) return std::nullopt;
    int k = i - 1;
    while (prof.in_gamma(k)) --k;  // row 1 is an increase row, so k >= 2 here
    return SCInequality{{i, prof.alpha(i) + 1}, build_profile_column(prof, k, shape)};
  }
  if (prof.alpha(i) + 2 > len) return std::nullopt;
  return SCInequality{{i, prof.alpha(i) + 2}, build_profile_column(prof, i - 1, shape)};
}

}  // namespace orbitopal
