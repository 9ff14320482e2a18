#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "orbitopal/face.hpp"
#include "orbitopal/fixing.hpp"

namespace orbitopal {

struct Term {
  std::size_t index = 0;
  double coef = 0.0;
};

// sum_k coef_k x_{index_k} <= rhs
struct LinearInequality {
  std::vector<Term> terms;
  double rhs = 0.0;

  double lhs(const std::vector<double>& x) const {
    double s = 0.0;
    for (const Term& t : terms) s += t.coef * x.at(t.index);
    return s;
  }
};

inline constexpr double kFixingTolerance = 1e-9;

// Fixing of a single inequality over the 0/1 points of a cube face. The
// smallest attainable left-hand side takes every one-fixed term and every free
// negative term; a free variable is fixed when flipping it away from its
// cheap value already breaks the inequality. Linear in the support size.
// Variables outside the support are never fixed.
inline FixingOutcome knapsack_fix(const LinearInequality& ineq, const CubeFace& face) {
  if (face.zeros.intersects(face.ones)) return FixingOutcome::make_infeasible();
  double min_lhs = 0.0;
  for (const Term& t : ineq.terms) {
    if (t.index >= face.dim()) throw std::out_of_range("inequality term outside the face dimension");
    if (face.ones.test(t.index))
      min_lhs += t.coef;
    else if (!face.zeros.test(t.index) && t.coef < 0)
      min_lhs += t.coef;
  }
  if (min_lhs > ineq.rhs + kFixingTolerance) return FixingOutcome::make_infeasible();
  CubeFace out = face;
  for (const Term& t : ineq.terms) {
    if (face.ones.test(t.index) || face.zeros.test(t.index)) continue;
    if (t.coef > 0 && min_lhs + t.coef > ineq.rhs + kFixingTolerance) out.zeros.set(t.index);
    if (t.coef < 0 && min_lhs - t.coef > ineq.rhs + kFixingTolerance) out.ones.set(t.index);
  }
  return FixingOutcome::make_fixed(std::move(out), face);
}

// Fixing of a single inequality over the vertices of the cube face that
// satisfy the row-sum equations of the shape (exactly one 1 per row). The
// left-hand side separates over rows, so the minimum is a sum of per-row
// minima over admissible cells.
inline FixingOutcome affine_fix(const LinearInequality& ineq, const CubeFace& face, const OrbitopeShape& shape) {
  require_dim(face, shape);
  if (face.zeros.intersects(face.ones)) return FixingOutcome::make_infeasible();
  std::vector<double> coef(shape.cell_count(), 0.0);
  for (const Term& t : ineq.terms) coef.at(t.index) += t.coef;

  const int p = shape.rows();
  std::vector<double> row_min(static_cast<std::size_t>(p));
  double min_lhs = 0.0;
  for (int i = 1; i <= p; ++i) {
    const std::size_t off = shape.row_offset(i);
    const int len = shape.row_length(i);
    int ones = 0;
    for (int j = 0; j < len; ++j) ones += face.ones.test(off + j);
    if (ones > 1) return FixingOutcome::make_infeasible();
    bool any = false;
    double m = 0.0;
    for (int j = 0; j < len; ++j) {
      const std::size_t k = off + j;
      const bool admissible = ones ? face.ones.test(k) : !face.zeros.test(k);
      if (!admissible) continue;
      if (!any || coef[k] < m) m = coef[k];
      any = true;
    }
    if (!any) return FixingOutcome::make_infeasible();
    row_min[static_cast<std::size_t>(i - 1)] = m;
    min_lhs += m;
  }
  if (min_lhs > ineq.rhs + kFixingTolerance) return FixingOutcome::make_infeasible();

  CubeFace out = face;
  for (int i = 1; i <= p; ++i) {
    const std::size_t off = shape.row_offset(i);
    const int len = shape.row_length(i);
    const double rest = min_lhs - row_min[static_cast<std::size_t>(i - 1)];
    bool row_has_one = false;
    for (int j = 0; j < len; ++j) row_has_one |= face.ones.test(off + j);
    int achievable = 0;
    std::size_t last = 0;
    for (int j = 0; j < len; ++j) {
      const std::size_t k = off + j;
      const bool admissible = row_has_one ? face.ones.test(k) : !face.zeros.test(k);
      if (!admissible || rest + coef[k] > ineq.rhs + kFixingTolerance) continue;
      ++achievable;
      last = k;
    }
    // achievable >= 1 because the row minimum itself passes
    if (achievable == 1) {
      detail::fix_row_to(shape, out, i, shape.cell(last).j);
      continue;
    }
    for (int j = 0; j < len; ++j) {
      const std::size_t k = off + j;
      const bool admissible = row_has_one ? face.ones.test(k) : !face.zeros.test(k);
      if (!admissible || rest + coef[k] > ineq.rhs + kFixingTolerance) out.zeros.set(k);
    }
  }
  return FixingOutcome::make_fixed(std::move(out), face);
}

}  // namespace orbitopal
