#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitopal/lp.hpp"
#include "orbitopal/shape.hpp"

namespace orbitopal {

struct WeightedEdge {
  int i = 0, k = 0;  // 1-based, i != k
  double w = 0.0;
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct PartitionInstance {
  int p = 0;
  int q = 0;
  std::vector<WeightedEdge> edges;
  friend bool operator==(const PartitionInstance&, const PartitionInstance&) = default;
};

inline void validate(const PartitionInstance& inst) {
  if (inst.q < 2 || inst.q > inst.p)
    throw std::invalid_argument("partition instance needs 2 <= q <= p, got p=" + std::to_string(inst.p) +
                                " q=" + std::to_string(inst.q));
  std::set<std::pair<int, int>> seen;
  for (const auto& e : inst.edges) {
    if (e.i < 1 || e.k < 1 || e.i > inst.p || e.k > inst.p) throw std::invalid_argument("edge endpoint out of range");
    if (e.i == e.k) throw std::invalid_argument("self loop");
    if (!(e.w >= 0)) throw std::invalid_argument("negative edge weight");
    if (!seen.insert({std::min(e.i, e.k), std::max(e.i, e.k)}).second) throw std::invalid_argument("parallel edge");
  }
}

inline bool integral_weights(const PartitionInstance& inst) {
  return std::all_of(inst.edges.begin(), inst.edges.end(), [](const WeightedEdge& e) { return e.w == std::floor(e.w); });
}

// Weight of the edges inside parts. `part[v-1]` is the part of node v.
inline double partition_value(const PartitionInstance& inst, const std::vector<int>& part) {
  double s = 0.0;
  for (const auto& e : inst.edges)
    if (part.at(e.i - 1) == part.at(e.k - 1)) s += e.w;
  return s;
}

// ---- file format: "p m q" then m lines "i k w" ----

inline void write_instance(std::ostream& os, const PartitionInstance& inst) {
  os << inst.p << ' ' << inst.edges.size() << ' ' << inst.q << '\n';
  for (const auto& e : inst.edges) os << e.i << ' ' << e.k << ' ' << e.w << '\n';
}

inline PartitionInstance read_instance(std::istream& is) {
  auto fail = [](const std::string& what) { throw std::runtime_error("instance file: " + what); };
  std::string line;
  auto next = [&](std::istringstream& ss) {
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ss = std::istringstream(line);
      return true;
    }
    return false;
  };
  std::istringstream ss;
  if (!next(ss)) fail("missing header");
  PartitionInstance inst;
  long m = 0;
  if (!(ss >> inst.p >> m >> inst.q) || m < 0) fail("bad header '" + line + "'");
  for (long e = 0; e < m; ++e) {
    if (!next(ss)) fail("expected " + std::to_string(m) + " edges, got " + std::to_string(e));
    WeightedEdge we;
    if (!(ss >> we.i >> we.k >> we.w)) fail("bad edge line '" + line + "'");
    inst.edges.push_back(we);
  }
  if (next(ss)) fail("trailing content '" + line + "'");
  validate(inst);
  return inst;
}

// m distinct uniform edges, integer weights uniform on 1..1000.
inline PartitionInstance generate_instance(int p, int m, std::uint64_t seed, int q = 2) {
  if (p < 2) throw std::invalid_argument("need at least two nodes");
  const long max_m = static_cast<long>(p) * (p - 1) / 2;
  if (m < 0 || m > max_m)
    throw std::invalid_argument("m=" + std::to_string(m) + " exceeds p(p-1)/2=" + std::to_string(max_m));
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> all;
  for (int i = 1; i <= p; ++i)
    for (int k = i + 1; k <= p; ++k) all.emplace_back(i, k);
  // partial Fisher-Yates with explicit index draws
  for (int e = 0; e < m; ++e) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(e), all.size() - 1);
    std::swap(all[static_cast<std::size_t>(e)], all[pick(rng)]);
  }
  std::uniform_int_distribution<int> weight(1, 1000);
  PartitionInstance inst{p, std::min(std::max(q, 2), p), {}};
  for (int e = 0; e < m; ++e) inst.edges.push_back({all[e].first, all[e].second, double(weight(rng))});
  return inst;
}

inline std::vector<double> star_weights(const PartitionInstance& inst) {
  std::vector<double> s(inst.p, 0.0);
  for (const auto& e : inst.edges) {
    s[e.i - 1] += e.w;
    s[e.k - 1] += e.w;
  }
  return s;
}

// order[r] = original node (1-based) placed in row r+1.
inline std::vector<int> star_weight_order(const PartitionInstance& inst) {
  const auto s = star_weights(inst);
  std::vector<int> order(inst.p);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return s[a - 1] > s[b - 1]; });
  return order;
}

// Relabels nodes so that original node order[r] becomes node r+1.
inline PartitionInstance permute_nodes(const PartitionInstance& inst, const std::vector<int>& order) {
  std::vector<int> pos(inst.p + 1);
  for (int r = 0; r < inst.p; ++r) pos[order[r]] = r + 1;
  PartitionInstance out{inst.p, inst.q, {}};
  for (const auto& e : inst.edges) out.edges.push_back({pos[e.i], pos[e.k], e.w});
  return out;
}

// ---- LP model of the partition IP over the reduced index set ----

struct ModelLayout {
  OrbitopeShape shape;
  std::vector<std::size_t> x_var;                      // per reduced cell
  std::vector<std::size_t> y_var;                      // per edge
  std::vector<std::size_t> row_sum_row;                // per node
  std::vector<std::vector<std::size_t>> coupling_row;  // [edge][column-1]

  std::size_t x_count() const { return x_var.size(); }
};

inline std::pair<LPModel, ModelLayout> build_model(const PartitionInstance& inst, LPTolerances tol = {}) {
  validate(inst);
  ModelLayout lay{OrbitopeShape(inst.p, inst.q), {}, {}, {}, {}};
  LPModel lp(tol);
  const auto& s = lay.shape;
  for (std::size_t k = 0; k < s.cell_count(); ++k) lay.x_var.push_back(lp.add_variable(0, 1, 0));
  for (const auto& e : inst.edges) lay.y_var.push_back(lp.add_variable(0, 1, e.w));
  for (int i = 1; i <= inst.p; ++i) {
    LPModel::Terms t;
    for (int j = 1; j <= s.row_length(i); ++j) t.emplace_back(lay.x_var[s.index({i, j})], 1.0);
    lay.row_sum_row.push_back(lp.add_row(t, RowSense::eq, 1.0));
  }
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    const auto& ed = inst.edges[e];
    lay.coupling_row.emplace_back();
    for (int j = 1; j <= inst.q; ++j) {
      LPModel::Terms t{{lay.y_var[e], -1.0}};
      if (j <= s.row_length(ed.i)) t.emplace_back(lay.x_var[s.index({ed.i, j})], 1.0);
      if (j <= s.row_length(ed.k)) t.emplace_back(lay.x_var[s.index({ed.k, j})], 1.0);
      lay.coupling_row.back().push_back(lp.add_row(t, RowSense::le, 1.0));
    }
  }
  return {std::move(lp), std::move(lay)};
}

// ---- clique inequalities sum_{i,k in C} y_ik >= b ----

inline long clique_rhs(long size, long q) {
  const long t = size / q, r = size % q;
  return t * (t - 1) * (q - r) / 2 + t * (t + 1) * r / 2;
}

struct CliqueCut {
  std::vector<int> nodes;  // sorted, 1-based
  long rhs = 0;
  double violation = 0.0;
};

inline constexpr double kCutViolationTolerance = 1e-6;

struct CliqueSeparationConfig {
  double threshold = 0.5;  // {i,k} enters the support graph iff y*_ik < threshold
  std::size_t max_cuts = 20;
};

// Greedy clique growth in the support graph from every seed (by descending
// support degree), one swap pass per clique, keep the most violated cuts.
// `y` holds the LP value per edge of `inst`.
inline std::vector<CliqueCut> separate_clique(const std::vector<double>& y, const PartitionInstance& inst,
                                              CliqueSeparationConfig cfg = {}) {
  const int p = inst.p;
  if (y.size() != inst.edges.size()) throw std::invalid_argument("y size does not match edge count");
  std::vector<std::vector<double>> val(p, std::vector<double>(p, -1.0));  // -1: not in support graph
  std::vector<int> degree(p, 0);
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    if (!(y[e] < cfg.threshold)) continue;
    const int a = inst.edges[e].i - 1, b = inst.edges[e].k - 1;
    val[a][b] = val[b][a] = std::max(0.0, y[e]);
    ++degree[a];
    ++degree[b];
  }
  std::vector<int> seeds(p);
  std::iota(seeds.begin(), seeds.end(), 0);
  std::stable_sort(seeds.begin(), seeds.end(), [&](int a, int b) { return degree[a] > degree[b]; });

  auto adjacent_to_all = [&](int v, const std::vector<int>& c, int skip) {
    for (int u : c)
      if (u != skip && (u == v || val[v][u] < 0)) return false;
    return true;
  };
  auto y_sum = [&](const std::vector<int>& c) {
    double s = 0.0;
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = a + 1; b < c.size(); ++b) s += val[c[a]][c[b]];
    return s;
  };

  std::set<std::vector<int>> seen;
  std::vector<CliqueCut> cuts;
  for (int seed : seeds) {
    if (degree[seed] < inst.q) continue;  // cannot reach size q+1
    std::vector<int> c{seed};
    std::vector<char> in(p, 0);
    in[seed] = 1;
    while (true) {
      int best = -1;
      double add = 0.0;
      for (int v = 0; v < p; ++v) {
        if (in[v] || !adjacent_to_all(v, c, -1)) continue;
        double a = 0.0;
        for (int u : c) a += val[v][u];
        if (best < 0 || a < add) best = v, add = a;
      }
      if (best < 0) break;
      c.push_back(best);
      in[best] = 1;
    }
    if (static_cast<int>(c.size()) <= inst.q) continue;
    // one pass of swaps that lower the y-sum
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
      const int out = c[idx];
      double cur = 0.0;
      for (int u : c)
        if (u != out) cur += val[out][u];
      int best = -1;
      double best_sum = cur;
      for (int v = 0; v < p; ++v) {
        if (in[v] || !adjacent_to_all(v, c, out)) continue;
        double a = 0.0;
        for (int u : c)
          if (u != out) a += val[v][u];
        if (a < best_sum - 1e-12) best = v, best_sum = a;
      }
      if (best >= 0) {
        in[out] = 0;
        in[best] = 1;
        c[idx] = best;
      }
    }
    std::vector<int> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) continue;
    const long b = clique_rhs(static_cast<long>(sorted.size()), inst.q);
    const double viol = static_cast<double>(b) - y_sum(sorted);
    if (viol <= kCutViolationTolerance) continue;
    CliqueCut cut;
    for (int v : sorted) cut.nodes.push_back(v + 1);
    cut.rhs = b;
    cut.violation = viol;
    cuts.push_back(std::move(cut));
  }
  std::stable_sort(cuts.begin(), cuts.end(), [](const CliqueCut& a, const CliqueCut& b) { return a.violation > b.violation; });
  if (cuts.size() > cfg.max_cuts) cuts.resize(cfg.max_cuts);
  return cuts;
}

}  // namespace orbitopal
