#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orbitopal/face_io.hpp"
#include "orbitopal/vertices.hpp"

namespace orbitopal {

// Vertex cover instance on nodes 1..n.
struct VCInstance {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  int k = 0;
};

class DegenerateInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void validate_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("negative node count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > n || v > n)
      throw std::invalid_argument("edge {" + std::to_string(u) + "," + std::to_string(v) + "} has a node outside 1.." +
                                  std::to_string(n));
    if (u == v) throw std::invalid_argument("loop at node " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second)
      throw std::invalid_argument("parallel edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
  }
}

// Zero-fixing feasibility instance for the covering orbitope over the full
// p x q grid. Graph nodes (original, then padding) become the even columns
// 2, 4, ..., q; row kappa+h belongs to padded edge h.
struct CoveringFixInstance {
  int p = 0;
  int q = 0;
  int kappa = 0;
  int k_tilde = 0;
  int original_nodes = 0;
  std::vector<std::pair<int, int>> edge_columns;  // padded edge list, as column labels
  std::vector<char> zero;                          // row-major p x q

  bool is_zero(int i, int j) const { return zero[static_cast<std::size_t>((i - 1) * q + (j - 1))]; }
  int edge_rows() const { return static_cast<int>(edge_columns.size()); }
};

inline CoveringFixInstance reduce_vc(const VCInstance& in) {
  validate_graph(in.n, in.edges);
  if (in.k > in.n) throw std::invalid_argument("cover budget k exceeds the node count");
  if (in.k < 1) throw DegenerateInstance("cover budget k must be at least 1");
  if (in.edges.empty()) throw DegenerateInstance("graph has no edges");

  CoveringFixInstance out;
  out.kappa = 0;
  while ((1 << out.kappa) - 1 < in.k) ++out.kappa;
  out.k_tilde = (1 << out.kappa) - 1;
  out.original_nodes = in.n;
  for (auto [u, v] : in.edges) out.edge_columns.emplace_back(2 * u, 2 * v);
  int next = in.n + 1;
  for (int t = 0; t < out.k_tilde - in.k; ++t, next += 2) out.edge_columns.emplace_back(2 * next, 2 * (next + 1));
  const int nodes = next - 1;
  out.p = out.kappa + out.edge_rows();
  out.q = 2 * nodes;
  out.zero.assign(static_cast<std::size_t>(out.p) * static_cast<std::size_t>(out.q), 0);
  for (int h = 1; h <= out.edge_rows(); ++h) {
    const auto [v, w] = out.edge_columns[static_cast<std::size_t>(h - 1)];
    for (int j = 1; j <= out.q; ++j)
      if (j != v && j != w) out.zero[static_cast<std::size_t>((out.kappa + h - 1) * out.q + (j - 1))] = 1;
  }
  return out;
}

inline FaceRecord to_record(const CoveringFixInstance& inst) {
  FaceRecord r{inst.p, inst.q, {}, {}};
  for (int i = 1; i <= inst.p; ++i)
    for (int j = 1; j <= inst.q; ++j)
      if (inst.is_zero(i, j)) r.zeros.push_back({i, j});
  return r;
}

inline CoveringFixInstance from_record(const FaceRecord& r) {
  if (r.p < 1 || r.q < 1) throw std::invalid_argument("covering instance needs p, q >= 1");
  if (!r.ones.empty()) throw std::invalid_argument("covering instance takes zero-fixings only");
  CoveringFixInstance inst;
  inst.p = r.p;
  inst.q = r.q;
  inst.zero.assign(static_cast<std::size_t>(r.p) * static_cast<std::size_t>(r.q), 0);
  for (auto c : r.zeros) {
    if (c.i < 1 || c.i > r.p || c.j < 1 || c.j > r.q) throw std::out_of_range("zero cell " + to_string(c) + " outside grid");
    inst.zero[static_cast<std::size_t>((c.i - 1) * r.q + (c.j - 1))] = 1;
  }
  return inst;
}

// 0/1 matrix over the full grid.
struct CoveringMatrix {
  int p = 0;
  int q = 0;
  std::vector<char> cell;

  CoveringMatrix() = default;
  CoveringMatrix(int rows, int cols) : p(rows), q(cols), cell(static_cast<std::size_t>(rows) * cols, 0) {}
  char& at(int i, int j) { return cell[static_cast<std::size_t>((i - 1) * q + (j - 1))]; }
  char at(int i, int j) const { return cell[static_cast<std::size_t>((i - 1) * q + (j - 1))]; }
};

// Column j is lexicographically at least column j+1 when read top-down.
inline bool columns_nonincreasing(const CoveringMatrix& m) {
  for (int j = 1; j < m.q; ++j) {
    for (int i = 1; i <= m.p; ++i) {
      if (m.at(i, j) == m.at(i, j + 1)) continue;
      if (m.at(i, j) < m.at(i, j + 1)) return false;
      break;
    }
  }
  return true;
}

// Vertex of the covering orbitope (at least one 1 per row, columns sorted)
// avoiding every zero-fixed cell.
inline bool is_feasible_covering_vertex(const CoveringMatrix& m, const CoveringFixInstance& inst) {
  if (m.p != inst.p || m.q != inst.q) return false;
  for (int i = 1; i <= m.p; ++i) {
    bool any = false;
    for (int j = 1; j <= m.q; ++j) {
      if (m.at(i, j) && inst.is_zero(i, j)) return false;
      any = any || m.at(i, j);
    }
    if (!any) return false;
  }
  return columns_nonincreasing(m);
}

// Number of alibis in row i: positions j >= 2 with x[i][j-1] = 1, x[i][j] = 0.
inline int alibis_in_row(const CoveringMatrix& m, int i) {
  int n = 0;
  for (int j = 2; j <= m.q; ++j) n += m.at(i, j - 1) && !m.at(i, j);
  return n;
}

// Extends a cover of the original graph (node ids) to the padded graph and
// returns it as column labels: one endpoint of every padding edge is added.
inline std::vector<int> padded_cover(const CoveringFixInstance& inst, const std::vector<int>& cover_nodes) {
  std::vector<int> cols;
  for (int v : cover_nodes) cols.push_back(2 * v);
  for (std::size_t h = inst.edge_columns.size(); h-- > 0;) {
    const auto [v, w] = inst.edge_columns[h];
    if (v <= 2 * inst.original_nodes) break;
    cols.push_back(v);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

// Feasible covering vertex from a vertex cover given as column labels. Edge
// rows carry a 1 at every covered endpoint. The first kappa rows come from a
// complete binary tree over the sorted cover padded with its maximum,
// labelled in order: the node at depth i-1 splits its column interval [l, r]
// at a_t into a block of ones [l, a_t - 1] and a block of zeros [a_t, r],
// which places an alibi at (i, a_t).
inline CoveringMatrix build_cover_vertex(const CoveringFixInstance& inst, std::vector<int> cover) {
  std::sort(cover.begin(), cover.end());
  cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  if (cover.empty()) throw std::invalid_argument("cover is empty");
  if (static_cast<int>(cover.size()) > inst.k_tilde)
    throw std::invalid_argument("cover has " + std::to_string(cover.size()) + " nodes, budget is " +
                                std::to_string(inst.k_tilde));
  for (int c : cover)
    if (c < 2 || c > inst.q || c % 2) throw std::invalid_argument("cover entry " + std::to_string(c) + " is not a node column");
  auto covered = [&](int c) { return std::binary_search(cover.begin(), cover.end(), c); };
  for (auto [v, w] : inst.edge_columns)
    if (!covered(v) && !covered(w))
      throw std::invalid_argument("edge {" + std::to_string(v) + "," + std::to_string(w) + "} is not covered");

  CoveringMatrix m(inst.p, inst.q);
  for (int h = 1; h <= inst.edge_rows(); ++h) {
    const auto [v, w] = inst.edge_columns[static_cast<std::size_t>(h - 1)];
    if (covered(v)) m.at(inst.kappa + h, v) = 1;
    if (covered(w)) m.at(inst.kappa + h, w) = 1;
  }

  std::vector<int> a = cover;
  a.resize(static_cast<std::size_t>(inst.k_tilde), cover.back());
  // In-order labels: the subtree over a[lo..hi] has its root at the middle.
  auto place = [&](auto&& self, int lo, int hi, int depth, int l, int r) -> void {
    if (lo > hi) return;
    const int mid = (lo + hi) / 2;
    const int split = std::clamp(a[static_cast<std::size_t>(mid)], l, r + 1);
    for (int j = l; j < split; ++j) m.at(depth, j) = 1;
    self(self, lo, mid - 1, depth + 1, l, split - 1);
    self(self, mid + 1, hi, depth + 1, split, r);
  };
  place(place, 0, inst.k_tilde - 1, 1, 1, inst.q);
  return m;
}

struct CoveringGuard {
  int max_rows = 16;
  int max_cols = 40;
  std::size_t max_states = 20'000'000;
};

// Decides whether some covering-orbitope vertex avoids all zero-fixed cells.
// Columns are chosen left to right, each a subset of its admissible rows and
// lexicographically at most its predecessor; failed (column, predecessor,
// covered rows) states are memoised.
inline bool covering_feasible_bruteforce(const CoveringFixInstance& inst, CoveringGuard guard = {}) {
  if (inst.p > guard.max_rows || inst.q > guard.max_cols || inst.p > 29 || inst.q > 63)
    throw GuardExceeded("covering feasibility guard: p=" + std::to_string(inst.p) + ", q=" + std::to_string(inst.q));
  const int p = inst.p;
  const std::uint32_t all = (std::uint32_t{1} << p) - 1;
  // bit (p - i) holds row i, so numeric order is lexicographic order
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(inst.q) + 1, 0);
  for (int j = 1; j <= inst.q; ++j)
    for (int i = 1; i <= p; ++i)
      if (!inst.is_zero(i, j)) allowed[static_cast<std::size_t>(j)] |= std::uint32_t{1} << (p - i);
  std::vector<std::uint32_t> reachable(static_cast<std::size_t>(inst.q) + 2, 0);  // rows coverable from column j on
  for (int j = inst.q; j >= 1; --j)
    reachable[static_cast<std::size_t>(j)] = reachable[static_cast<std::size_t>(j) + 1] | allowed[static_cast<std::size_t>(j)];

  std::unordered_set<std::uint64_t> failed;
  auto key = [&](int j, std::uint32_t prev, std::uint32_t cov) {
    return (std::uint64_t(j) << 58) ^ (std::uint64_t(prev) << 29) ^ cov;
  };
  auto dfs = [&](auto&& self, int j, std::uint32_t prev, std::uint32_t cov) -> bool {
    if (cov == all) return true;  // remaining columns can be zero
    if (j > inst.q) return false;
    if ((cov | reachable[static_cast<std::size_t>(j)]) != all) return false;
    const std::uint64_t k = key(j, prev, cov);
    if (failed.count(k)) return false;
    const std::uint32_t mask = allowed[static_cast<std::size_t>(j)];
    // submasks of mask in decreasing numeric order, bounded by prev
    for (std::uint32_t s = mask;; s = (s - 1) & mask) {
      if (s <= prev && self(self, j + 1, s, cov | s)) return true;
      if (s == 0) break;
    }
    failed.insert(k);
    if (failed.size() > guard.max_states) throw GuardExceeded("covering feasibility search exceeded its state budget");
    return false;
  };
  return dfs(dfs, 1, all, 0);
}

}  // namespace orbitopal
