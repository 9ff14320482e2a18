#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbitopal/bitset.hpp"
#include "orbitopal/shape.hpp"

namespace orbitopal {

class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Limits for exhaustive enumeration. Only used by oracles and test harnesses.
struct EnumerationGuard {
  int max_rows = 10;
};

// Vertex of the partitioning orbitope: the column chosen by every row (1-based).
struct VertexMatrix {
  std::vector<int> column;

  int rows() const { return static_cast<int>(column.size()); }
  int operator()(int i) const { return column[static_cast<std::size_t>(i - 1)]; }
  friend bool operator==(const VertexMatrix&, const VertexMatrix&) = default;
};

inline BitSet to_bits(const VertexMatrix& v, const OrbitopeShape& shape) {
  BitSet bits(shape.cell_count());
  for (int i = 1; i <= v.rows(); ++i) bits.set(shape.index(i, v(i)));
  return bits;
}

// Restricted growth string test: j(1) = 1 and j(i+1) <= 1 + max_{k<=i} j(k).
inline bool is_vertex(const OrbitopeShape& shape, const VertexMatrix& v) {
  if (v.rows() != shape.rows()) return false;
  int highest = 0;
  for (int i = 1; i <= v.rows(); ++i) {
    const int j = v(i);
    if (j < 1 || j > shape.row_length(i) || j > highest + 1) return false;
    highest = std::max(highest, j);
  }
  return true;
}

// Same test on a 0/1 point over the reduced index set.
inline bool is_vertex(const OrbitopeShape& shape, const BitSet& x) {
  if (x.size() != shape.cell_count()) return false;
  VertexMatrix v;
  for (int i = 1; i <= shape.rows(); ++i) {
    int chosen = 0;
    for (int j = 1; j <= shape.row_length(i); ++j) {
      if (!x.test(shape.index(i, j))) continue;
      if (chosen) return false;
      chosen = j;
    }
    if (!chosen) return false;
    v.column.push_back(chosen);
  }
  return is_vertex(shape, v);
}

// Calls visit(const VertexMatrix&) once per vertex of the partitioning
// orbitope, in lexicographic order of the growth strings.
template <typename Visit>
void enumerate_partitioning_vertices(const OrbitopeShape& shape, Visit&& visit, EnumerationGuard guard = {}) {
  if (shape.rows() > guard.max_rows)
    throw GuardExceeded("vertex enumeration guard: p=" + std::to_string(shape.rows()) + " exceeds " +
                        std::to_string(guard.max_rows));
  const int p = shape.rows();
  VertexMatrix v;
  v.column.assign(static_cast<std::size_t>(p), 1);
  std::vector<int> highest(static_cast<std::size_t>(p) + 1, 0);  // highest[i] = max of rows 1..i
  highest[1] = 1;
  auto rec = [&](auto&& self, int i) -> void {
    if (i > p) {
      visit(std::as_const(v));
      return;
    }
    const int limit = std::min(highest[i - 1] + 1, shape.row_length(i));
    for (int j = 1; j <= limit; ++j) {
      v.column[static_cast<std::size_t>(i - 1)] = j;
      highest[i] = std::max(highest[i - 1], j);
      self(self, i + 1);
    }
  };
  rec(rec, 2);
}

inline std::vector<VertexMatrix> partitioning_vertices(const OrbitopeShape& shape, EnumerationGuard guard = {}) {
  std::vector<VertexMatrix> out;
  enumerate_partitioning_vertices(shape, [&](const VertexMatrix& v) { out.push_back(v); }, guard);
  return out;
}

}  // namespace orbitopal
