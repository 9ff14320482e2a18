#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbitopal {

// A cell (i, j) of the reduced index set: row i in 1..p, column j in 1..q(i).
struct CellIndex {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Diagonal coordinates <eta, j> := (j + eta - 1, j).
struct DiagonalCoord {
  int eta = 0;
  int j = 0;
  friend auto operator<=>(const DiagonalCoord&, const DiagonalCoord&) = default;
};

inline std::string to_string(CellIndex c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

// Shape of a p x q orbitope. Only cells with j <= min(i, q) are represented;
// they are numbered row-major starting at 0.
class OrbitopeShape {
 public:
  OrbitopeShape(int p, int q) : p_(p), q_(q) {
    if (q < 2 || p < q)
      throw std::invalid_argument("orbitope shape needs p >= q >= 2, got p=" + std::to_string(p) +
                                  " q=" + std::to_string(q));
  }

  int rows() const { return p_; }
  int cols() const { return q_; }

  // Number of cells in row i, i.e. q(i) = min(i, q).
  int row_length(int i) const {
    if (i < 1 || i > p_) throw std::out_of_range("row " + std::to_string(i) + " outside 1.." + std::to_string(p_));
    return std::min(i, q_);
  }

  std::size_t cell_count() const { return row_offset(p_ + 1); }

  bool contains(CellIndex c) const { return c.i >= 1 && c.i <= p_ && c.j >= 1 && c.j <= std::min(c.i, q_); }
  bool contains(DiagonalCoord d) const { return d.j >= 1 && d.j <= q_ && d.eta >= 1 && d.eta <= p_ - d.j + 1; }

  // Linear index of the first cell of row i (valid for i in 1..p+1).
  std::size_t row_offset(int i) const {
    const auto r = static_cast<std::size_t>(i - 1);
    const auto q = static_cast<std::size_t>(q_);
    if (r <= q) return r * (r + 1) / 2;
    return q * (q + 1) / 2 + (r - q) * q;
  }

  std::size_t index(CellIndex c) const {
    if (!contains(c)) throw std::out_of_range("cell " + to_string(c) + " outside the reduced index set");
    return row_offset(c.i) + static_cast<std::size_t>(c.j - 1);
  }
  std::size_t index(int i, int j) const { return index(CellIndex{i, j}); }

  CellIndex cell(std::size_t idx) const {
    if (idx >= cell_count()) throw std::out_of_range("cell index out of range");
    const auto q = static_cast<std::size_t>(q_);
    const std::size_t tri = q * (q + 1) / 2;
    if (idx >= tri) {
      const std::size_t rest = idx - tri;
      return {static_cast<int>(q + 1 + rest / q), static_cast<int>(rest % q + 1)};
    }
    int i = 1;
    while (row_offset(i + 1) <= idx) ++i;
    return {i, static_cast<int>(idx - row_offset(i) + 1)};
  }

  friend bool operator==(const OrbitopeShape&, const OrbitopeShape&) = default;

 private:
  int p_;
  int q_;
};

inline int q_of_row(const OrbitopeShape& shape, int i) { return shape.row_length(i); }

inline CellIndex diag_to_cell(const OrbitopeShape& shape, DiagonalCoord d) {
  if (!shape.contains(d))
    throw std::out_of_range("diagonal coordinate <" + std::to_string(d.eta) + "," + std::to_string(d.j) +
                            "> outside shape");
  return {d.j + d.eta - 1, d.j};
}

inline DiagonalCoord cell_to_diag(const OrbitopeShape& shape, CellIndex c) {
  if (!shape.contains(c)) throw std::out_of_range("cell " + to_string(c) + " outside shape");
  return {c.i - c.j + 1, c.j};
}

}  // namespace orbitopal
