#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitopal/linear.hpp"
#include "orbitopal/sci.hpp"

namespace orbitopal {

enum class SystemTag { ci, sci };

// Explicit size limit for materialising S_SCI. Counted, not estimated.
inline constexpr std::size_t kMaxSystemInequalities = 2'000'000;

// Non-negativity, the row-sum equations written as two inequalities each, and
// either all column inequalities or all shifted column inequalities.
struct InequalitySystem {
  SystemTag tag = SystemTag::sci;
  OrbitopeShape shape;
  std::vector<LinearInequality> inequalities;
};

inline std::size_t count_scis(const OrbitopeShape& shape) {
  // anchor <eta,j> has C(eta + j - 2, eta) shifted columns
  std::size_t total = 0;
  for (int i = 2; i <= shape.rows(); ++i) {
    for (int j = 2; j <= shape.row_length(i); ++j) {
      const int eta = i - j + 1;
      double c = 1.0;
      for (int t = 1; t <= j - 2; ++t) c = c * (eta + t) / t;
      total += static_cast<std::size_t>(c + 0.5);
      if (total > kMaxSystemInequalities) return total;
    }
  }
  return total;
}

inline InequalitySystem build_system(const OrbitopeShape& shape, SystemTag tag) {
  if (tag == SystemTag::sci && count_scis(shape) > kMaxSystemInequalities)
    throw GuardExceeded("shifted column system of shape " + std::to_string(shape.rows()) + "x" +
                        std::to_string(shape.cols()) + " is too large to enumerate");
  InequalitySystem sys{tag, shape, {}};
  for (std::size_t k = 0; k < shape.cell_count(); ++k) sys.inequalities.push_back({{{k, -1.0}}, 0.0});
  for (int i = 1; i <= shape.rows(); ++i) {
    LinearInequality le, ge;
    le.rhs = 1.0;
    ge.rhs = -1.0;
    for (int j = 1; j <= shape.row_length(i); ++j) {
      le.terms.push_back({shape.index(i, j), 1.0});
      ge.terms.push_back({shape.index(i, j), -1.0});
    }
    sys.inequalities.push_back(std::move(le));
    sys.inequalities.push_back(std::move(ge));
  }
  for_each_sci(
      shape, [&](const SCInequality& s) { sys.inequalities.push_back(to_linear(s, shape)); }, tag == SystemTag::ci);
  return sys;
}

// Applies single-inequality fixings until nothing changes. Fixing is monotone
// under shrinking faces, so the fixpoint does not depend on the order. With
// `affine`, every inequality is fixed relative to the row-sum equations.
inline FixingOutcome sequential_fix(const std::vector<LinearInequality>& inequalities, const CubeFace& face,
                                    const OrbitopeShape& shape, bool affine) {
  require_fixing_ready(face, shape);
  CubeFace cur = face;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const LinearInequality& ineq : inequalities) {
      FixingOutcome r = affine ? affine_fix(ineq, cur, shape) : knapsack_fix(ineq, cur);
      if (r.infeasible()) return FixingOutcome::make_infeasible();
      if (!(*r.face == cur)) {
        cur = std::move(*r.face);
        changed = true;
      }
    }
  }
  return FixingOutcome::make_fixed(std::move(cur), face);
}

inline FixingOutcome sequential_fix(const InequalitySystem& system, const CubeFace& face, bool affine) {
  return sequential_fix(system.inequalities, face, system.shape, affine);
}

// Simultaneous fixing of {x in {0,1}^n : Ax <= b} by enumerating the 0/1
// points of the face. Test-scale only.
inline FixingOutcome simultaneous_fix_bruteforce(const std::vector<LinearInequality>& inequalities,
                                                 const CubeFace& face, int max_dim = 24) {
  const std::size_t n = face.dim();
  if (static_cast<int>(n) > max_dim) throw GuardExceeded("0/1 enumeration over " + std::to_string(n) + " variables");
  if (face.zeros.intersects(face.ones)) return FixingOutcome::make_infeasible();
  BitSet seen_one(n), always_one(n);
  bool any = false;
  std::vector<double> x(n);
  BitSet bits(n);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      const bool on = (m >> k) & 1;
      x[k] = on ? 1.0 : 0.0;
      bits.assign(k, on);
    }
    if (bits.intersects(face.zeros) || !face.ones.is_subset_of(bits)) continue;
    bool ok = true;
    for (const auto& ineq : inequalities)
      if (ineq.lhs(x) > ineq.rhs + kFixingTolerance) {
        ok = false;
        break;
      }
    if (!ok) continue;
    always_one = any ? (always_one & bits) : bits;
    seen_one |= bits;
    any = true;
  }
  if (!any) return FixingOutcome::make_infeasible();
  CubeFace out(n);
  for (std::size_t k = 0; k < n; ++k)
    if (!seen_one.test(k)) out.zeros.set(k);
  out.ones = always_one;
  return FixingOutcome::make_fixed(std::move(out), face);
}

// Plain sequential fixing of an arbitrary system over the cube.
inline FixingOutcome sequential_fix_cube(const std::vector<LinearInequality>& inequalities, const CubeFace& face) {
  CubeFace cur = face;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const LinearInequality& ineq : inequalities) {
      FixingOutcome r = knapsack_fix(ineq, cur);
      if (r.infeasible()) return FixingOutcome::make_infeasible();
      if (!(*r.face == cur)) {
        cur = std::move(*r.face);
        changed = true;
      }
    }
  }
  return FixingOutcome::make_fixed(std::move(cur), face);
}

// A four-variable polytope where sequential fixing is strictly weaker than
// simultaneous fixing. Variables are 0-based here (x1 is index 0).
inline std::vector<LinearInequality> weak_sequential_polytope() {
  std::vector<LinearInequality> a;
  for (std::size_t k : {0, 1, 2}) a.push_back({{{k, -1.0}}, 0.0});
  for (std::size_t k : {0, 1, 3}) a.push_back({{{k, 1.0}}, 1.0});
  a.push_back({{{0, -1.0}, {1, 1.0}, {2, 1.0}, {3, -1.0}}, 0.0});
  a.push_back({{{0, 1.0}, {1, -1.0}, {2, 1.0}, {3, -1.0}}, 0.0});
  return a;
}

struct FixingComparison {
  FixingOutcome sequential;
  FixingOutcome simultaneous;
};

inline FixingComparison compare_on_weak_polytope(const CubeFace& face) {
  const auto a = weak_sequential_polytope();
  return {sequential_fix_cube(a, face), simultaneous_fix_bruteforce(a, face)};
}

// The face fixing x4 to zero: sequential fixing gains nothing while
// simultaneous fixing also zeroes x3.
inline FixingComparison weak_sequential_demo() {
  CubeFace face(4);
  face.zeros.set(3);
  return compare_on_weak_polytope(face);
}

}  // namespace orbitopal
