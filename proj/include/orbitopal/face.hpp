#pragma once

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "orbitopal/bitset.hpp"
#include "orbitopal/shape.hpp"

namespace orbitopal {

// Face of the 0/1 cube given by the coordinates fixed to zero and to one.
// The coordinate space is implicit in the bit set size; for orbitope faces it
// is the reduced index set of an OrbitopeShape.
struct CubeFace {
  BitSet zeros;
  BitSet ones;

  CubeFace() = default;
  explicit CubeFace(std::size_t dim) : zeros(dim), ones(dim) {}
  explicit CubeFace(const OrbitopeShape& shape) : CubeFace(shape.cell_count()) {}

  std::size_t dim() const { return zeros.size(); }

  // Containment of cube faces: *this is a subset of `other` iff it fixes at
  // least everything `other` fixes.
  bool is_subface_of(const CubeFace& other) const {
    return other.zeros.is_subset_of(zeros) && other.ones.is_subset_of(ones);
  }

  friend bool operator==(const CubeFace&, const CubeFace&) = default;
};

inline CubeFace make_face(const OrbitopeShape& shape, std::initializer_list<CellIndex> zeros,
                          std::initializer_list<CellIndex> ones = {}) {
  CubeFace f(shape);
  for (auto c : zeros) f.zeros.set(shape.index(c));
  for (auto c : ones) f.ones.set(shape.index(c));
  return f;
}

inline std::vector<CellIndex> cells_of(const OrbitopeShape& shape, const BitSet& set) {
  std::vector<CellIndex> out;
  set.for_each([&](std::size_t k) { out.push_back(shape.cell(k)); });
  return out;
}

enum class FaceCheck { ok, violates_p1, violates_p2, overlap };

inline const char* to_string(FaceCheck c) {
  switch (c) {
    case FaceCheck::ok: return "ok";
    case FaceCheck::violates_p1: return "violates_P1";
    case FaceCheck::violates_p2: return "violates_P2";
    case FaceCheck::overlap: return "overlap";
  }
  return "?";
}

inline void require_dim(const CubeFace& face, const OrbitopeShape& shape) {
  if (face.dim() != shape.cell_count()) throw std::invalid_argument("face dimension does not match orbitope shape");
}

// P1: no row is completely fixed to zero.
// P2: a one-fixing in row i comes with zero-fixings of the rest of row i.
inline FaceCheck check_face(const CubeFace& face, const OrbitopeShape& shape) {
  require_dim(face, shape);
  if (face.zeros.intersects(face.ones)) return FaceCheck::overlap;
  for (int i = 1; i <= shape.rows(); ++i) {
    const int len = shape.row_length(i);
    const std::size_t off = shape.row_offset(i);
    int zeros = 0;
    for (int j = 0; j < len; ++j) zeros += face.zeros.test(off + j);
    if (zeros > len - 1) return FaceCheck::violates_p1;
  }
  for (int i = 1; i <= shape.rows(); ++i) {
    const int len = shape.row_length(i);
    const std::size_t off = shape.row_offset(i);
    for (int j = 0; j < len; ++j) {
      if (!face.ones.test(off + j)) continue;
      for (int l = 0; l < len; ++l)
        if (l != j && !face.zeros.test(off + l)) return FaceCheck::violates_p2;
    }
  }
  return FaceCheck::ok;
}

struct CompletedFace {
  FaceCheck status = FaceCheck::ok;  // ok, violates_p1 or overlap (empty face)
  CubeFace face;
};

// Closes a face under P2 by zero-fixing the row complement of every one-fixing.
inline CompletedFace complete_face(const CubeFace& face, const OrbitopeShape& shape) {
  require_dim(face, shape);
  CompletedFace out{FaceCheck::ok, face};
  if (face.zeros.intersects(face.ones)) {
    out.status = FaceCheck::overlap;
    return out;
  }
  face.ones.for_each([&](std::size_t k) {
    const CellIndex c = shape.cell(k);
    const std::size_t off = shape.row_offset(c.i);
    for (int l = 1; l <= shape.row_length(c.i); ++l)
      if (l != c.j) out.face.zeros.set(off + l - 1);
  });
  if (out.face.zeros.intersects(out.face.ones))
    out.status = FaceCheck::overlap;
  else if (check_face(out.face, shape) == FaceCheck::violates_p1)
    out.status = FaceCheck::violates_p1;
  return out;
}

}  // namespace orbitopal
