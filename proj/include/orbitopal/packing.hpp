#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "orbitopal/fixing.hpp"

namespace orbitopal {

// Packing orbitopes (at most one 1 per row) use the same reduced index set as
// partitioning orbitopes. Fixing reduces to the partitioning orbitope with one
// extra leading row and column: packing cell (i, j) sits at (i+1, j+1), and a
// packing row without a 1 puts its 1 into the new first column.

inline OrbitopeShape lifted_shape(const OrbitopeShape& packing) {
  return OrbitopeShape(packing.rows() + 1, packing.cols() + 1);
}

inline std::size_t lift_index(const OrbitopeShape& packing, const OrbitopeShape& lifted, std::size_t k) {
  const CellIndex c = packing.cell(k);
  return lifted.index(c.i + 1, c.j + 1);
}

inline FixingOutcome packing_fix(const CubeFace& face, const OrbitopeShape& shape) {
  require_dim(face, shape);
  if (face.zeros.intersects(face.ones)) throw std::invalid_argument("packing face fixes a cell both ways");
  const OrbitopeShape lifted = lifted_shape(shape);
  CubeFace up(lifted);
  face.zeros.for_each([&](std::size_t k) { up.zeros.set(lift_index(shape, lifted, k)); });
  face.ones.for_each([&](std::size_t k) { up.ones.set(lift_index(shape, lifted, k)); });

  const CompletedFace completed = complete_face(up, lifted);
  if (completed.status != FaceCheck::ok) return FixingOutcome::make_infeasible();

  const FixingOutcome lifted_outcome = orbitopal_fix(completed.face, lifted);
  if (lifted_outcome.infeasible()) return FixingOutcome::make_infeasible(lifted_outcome.stats);

  CubeFace down(shape);
  for (std::size_t k = 0; k < shape.cell_count(); ++k) {
    const std::size_t u = lift_index(shape, lifted, k);
    if (lifted_outcome.face->zeros.test(u)) down.zeros.set(k);
    if (lifted_outcome.face->ones.test(u)) down.ones.set(k);
  }
  FixingStats stats;
  stats.flag_transitions = lifted_outcome.stats.flag_transitions;
  return FixingOutcome::make_fixed(std::move(down), face, stats);
}

// All packing vertices as points over the reduced index set. Enumerates every
// p x q matrix with at most one 1 per row and keeps those whose columns are
// lexicographically non-increasing; cells above the diagonal are verified to
// be zero rather than assumed.
inline std::vector<BitSet> packing_vertices(const OrbitopeShape& shape, std::size_t max_matrices = 5'000'000) {
  const int p = shape.rows();
  const int q = shape.cols();
  if (std::pow(double(q + 1), double(p)) > double(max_matrices) || p > 62)
    throw GuardExceeded("packing enumeration guard exceeded");
  std::vector<int> choice(static_cast<std::size_t>(p), 0);  // 0 = empty row
  std::vector<BitSet> out;
  while (true) {
    std::vector<std::uint64_t> colval(static_cast<std::size_t>(q), 0);
    for (int i = 1; i <= p; ++i) {
      const int j = choice[static_cast<std::size_t>(i - 1)];
      if (j) colval[static_cast<std::size_t>(j - 1)] |= std::uint64_t{1} << (p - i);
    }
    bool sorted = true;
    for (int j = 1; j < q; ++j)
      if (colval[static_cast<std::size_t>(j - 1)] < colval[static_cast<std::size_t>(j)]) sorted = false;
    if (sorted) {
      BitSet bits(shape.cell_count());
      for (int i = 1; i <= p; ++i) {
        const int j = choice[static_cast<std::size_t>(i - 1)];
        if (!j) continue;
        if (!shape.contains(CellIndex{i, j})) throw std::logic_error("packing vertex above the diagonal");
        bits.set(shape.index(i, j));
      }
      out.push_back(std::move(bits));
    }
    int r = p - 1;
    while (r >= 0 && choice[static_cast<std::size_t>(r)] == q) choice[static_cast<std::size_t>(r--)] = 0;
    if (r < 0) break;
    ++choice[static_cast<std::size_t>(r)];
  }
  return out;
}

inline FixingOutcome packing_brute_force_fix(const CubeFace& face, const OrbitopeShape& shape) {
  require_dim(face, shape);
  const std::size_t n = shape.cell_count();
  BitSet seen_one(n), always_one(n);
  bool any = false;
  for (const BitSet& v : packing_vertices(shape)) {
    if (v.intersects(face.zeros) || !face.ones.is_subset_of(v)) continue;
    always_one = any ? (always_one & v) : v;
    seen_one |= v;
    any = true;
  }
  if (!any) return FixingOutcome::make_infeasible();
  CubeFace out(n);
  for (std::size_t k = 0; k < n; ++k)
    if (!seen_one.test(k)) out.zeros.set(k);
  out.ones = always_one;
  return FixingOutcome::make_fixed(std::move(out), face);
}

}  // namespace orbitopal
