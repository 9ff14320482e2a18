#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitopal/face.hpp"
#include "orbitopal/fixing.hpp"
#include "orbitopal/lp.hpp"
#include "orbitopal/partition.hpp"
#include "orbitopal/sci.hpp"
#include "orbitopal/sequential.hpp"

namespace orbitopal {

enum class SymmetryMode { off, of, sci, isoprune };

inline const char* to_string(SymmetryMode m) {
  switch (m) {
    case SymmetryMode::off: return "off";
    case SymmetryMode::of: return "of";
    case SymmetryMode::sci: return "sci";
    case SymmetryMode::isoprune: return "isoprune";
  }
  return "?";
}

inline SymmetryMode parse_symmetry(const std::string& s) {
  if (s == "off" || s == "basic") return SymmetryMode::off;
  if (s == "of") return SymmetryMode::of;
  if (s == "sci") return SymmetryMode::sci;
  if (s == "isoprune" || s == "iso") return SymmetryMode::isoprune;
  throw std::invalid_argument("unknown symmetry mode '" + s + "'");
}

// What a trace hook sees for every node that survives propagation.
struct NodeTrace {
  std::size_t id = 0;
  int depth = 0;
  double parent_bound = 0.0;
  double bound = 0.0;  // LP bound after the cut loop; NaN if the LP was infeasible
  const CubeFace* face = nullptr;
};

struct SolverConfig {
  SymmetryMode symmetry = SymmetryMode::off;
  bool clique_cuts = true;
  double threshold = 0.5;
  std::size_t cuts_per_round = 20;
  std::size_t rounds_per_node = 5;
  std::size_t node_limit = 0;  // 0: none
  double time_limit = 0.0;     // seconds, 0: none
  std::uint64_t seed = 0;      // the search is deterministic; the seed is carried into the report
  bool star_order = true;
  std::optional<std::vector<int>> start;  // part per node (original labels, 1-based parts)
  std::function<void(const NodeTrace&)> trace;
};

struct SolveReport {
  std::string instance_id;
  std::string variant;
  std::string status;  // optimal | node_limit | time_limit
  bool finished = false;
  double optimum = std::numeric_limits<double>::infinity();
  double lower_bound = 0.0;
  double root_bound = 0.0;
  double gap = 0.0;  // percent
  std::vector<int> partition;
  std::size_t nsub = 0;
  double cpu_s = 0.0;
  std::size_t n_of = 0;
  std::size_t cuts = 0;
  std::uint64_t seed = 0;
};

inline void write_report(std::ostream& os, const SolveReport& r) {
  const auto flags = os.flags();
  const auto prec = os.precision();
  if (!r.instance_id.empty()) os << "instance=" << r.instance_id << '\n';
  if (!r.variant.empty()) os << "variant=" << r.variant << '\n';
  os << "status=" << r.status << '\n';
  os << std::setprecision(12) << "optimum=" << r.optimum << '\n';
  os << "lower_bound=" << r.lower_bound << '\n';
  os << "nsub=" << r.nsub << '\n';
  os << std::fixed << std::setprecision(2) << "cpu_s=" << r.cpu_s << '\n';
  os.flags(flags);
  os << "n_of=" << r.n_of << '\n';
  os << "cuts=" << r.cuts << '\n';
  os << std::fixed << std::setprecision(4) << "gap=" << r.gap << '\n';
  os.flags(flags);
  os.precision(prec);
  os << "partition=";
  for (std::size_t v = 0; v < r.partition.size(); ++v) os << (v ? "," : "") << r.partition[v];
  os << '\n';
}

enum class Winner { a, b, none };

inline const char* to_string(Winner w) { return w == Winner::a ? "A" : w == Winner::b ? "B" : "none"; }

// Instance-level comparison: a finished run beats an unfinished one; among
// finished runs the faster wins, among unfinished runs the smaller gap wins;
// differences below the thresholds are not counted.
inline Winner compare_winners(const SolveReport& a, const SolveReport& b, double time_threshold = 1.0,
                              double gap_threshold = 0.1) {
  if (!a.instance_id.empty() && !b.instance_id.empty() && a.instance_id != b.instance_id)
    throw std::invalid_argument("reports refer to different instances: " + a.instance_id + " vs " + b.instance_id);
  if (a.finished != b.finished) return a.finished ? Winner::a : Winner::b;
  const double da = a.finished ? a.cpu_s : a.gap;
  const double db = b.finished ? b.cpu_s : b.gap;
  const double thr = a.finished ? time_threshold : gap_threshold;
  if (std::abs(da - db) < thr) return Winner::none;
  return da < db ? Winner::a : Winner::b;
}

// ---- isomorphism pruning for full column symmetry ----

// Rows 1..r that are decided: a one-fixing, or a single cell left open.
// Returns the column chosen by each decided row of that prefix.
inline std::vector<int> decided_prefix(const CubeFace& face, const OrbitopeShape& shape) {
  std::vector<int> cols;
  for (int i = 1; i <= shape.rows(); ++i) {
    int one = 0, open = 0, last = 0;
    for (int j = 1; j <= shape.row_length(i); ++j) {
      const std::size_t k = shape.index({i, j});
      if (face.ones.test(k)) one = j;
      if (!face.zeros.test(k)) ++open, last = j;
    }
    if (!one && open == 1) one = last;
    if (!one) break;
    cols.push_back(one);
  }
  return cols;
}

// A partial assignment is a representative iff the columns of its decided
// prefix appear in first-use order 1, 2, 3, ...
inline bool is_representative(const CubeFace& face, const OrbitopeShape& shape) {
  int used = 0;
  for (int c : decided_prefix(face, shape)) {
    if (c > used + 1) return false;
    used = std::max(used, c);
  }
  return true;
}

// Zero-settings implied by the representative rule: the first undecided row
// cannot open a column beyond the next unused one. nullopt if that empties
// the row.
inline std::optional<CubeFace> isoprune_settings(const CubeFace& face, const OrbitopeShape& shape) {
  const auto prefix = decided_prefix(face, shape);
  const int r = static_cast<int>(prefix.size()) + 1;
  if (r > shape.rows()) return face;
  int used = 0;
  for (int c : prefix) used = std::max(used, c);
  CubeFace out = face;
  for (int j = used + 2; j <= shape.row_length(r); ++j) out.zeros.set(shape.index({r, j}));
  for (int j = 1; j <= shape.row_length(r); ++j)
    if (!out.zeros.test(shape.index({r, j}))) return out;
  return std::nullopt;
}

// ---- greedy primal start ----

// Nodes in row order, each to the part with the least added weight.
inline std::vector<int> greedy_partition(const PartitionInstance& inst) {
  std::vector<std::vector<std::pair<int, double>>> adj(inst.p);
  for (const auto& e : inst.edges) {
    adj[e.i - 1].emplace_back(e.k - 1, e.w);
    adj[e.k - 1].emplace_back(e.i - 1, e.w);
  }
  std::vector<int> part(inst.p, 0);
  for (int v = 0; v < inst.p; ++v) {
    std::vector<double> cost(inst.q, 0.0);
    for (auto [u, w] : adj[v])
      if (u < v) cost[part[u] - 1] += w;
    part[v] = 1 + static_cast<int>(std::min_element(cost.begin(), cost.end()) - cost.begin());
  }
  return part;
}

// Renames parts in first-use order so that node v gets a part <= min(v, q).
inline std::vector<int> canonical_partition(const std::vector<int>& part) {
  std::vector<int> rename(part.size() + 2, 0), out(part.size());
  int next = 0;
  for (std::size_t v = 0; v < part.size(); ++v) {
    int& r = rename.at(part[v]);
    if (!r) r = ++next;
    out[v] = r;
  }
  return out;
}

// ---- branch and cut ----

class PartitionSolver {
 public:
  PartitionSolver(const PartitionInstance& inst, SolverConfig cfg) : orig_(inst), cfg_(std::move(cfg)) {
    validate(inst);
    order_.resize(inst.p);
    for (int v = 0; v < inst.p; ++v) order_[v] = v + 1;
    if (cfg_.star_order) order_ = star_weight_order(inst);
    work_ = permute_nodes(inst, order_);
    auto [lp, lay] = build_model(work_);
    lp_ = std::make_unique<LPModel>(std::move(lp));
    lay_ = std::make_unique<ModelLayout>(std::move(lay));
    integral_ = integral_weights(work_);
    if (cfg_.symmetry == SymmetryMode::sci) {
      try {
        sci_system_ = build_system(lay_->shape, SystemTag::sci);
      } catch (const GuardExceeded&) {
        // cuts only on shapes with too many inequalities
      }
    }
  }

  const ModelLayout& layout() const { return *lay_; }
  const PartitionInstance& working_instance() const { return work_; }

  SolveReport run() {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
    const OrbitopeShape& shape = lay_->shape;

    SolveReport rep;
    rep.variant = to_string(cfg_.symmetry);
    rep.seed = cfg_.seed;
    incumbent_ = greedy_partition(work_);
    best_ = partition_value(work_, incumbent_);
    if (cfg_.start) {
      const auto& s = *cfg_.start;
      if (static_cast<int>(s.size()) != work_.p) throw std::invalid_argument("start partition has wrong length");
      std::vector<int> mapped(work_.p);
      for (int r = 0; r < work_.p; ++r) {
        const int part = s[order_[r] - 1];
        if (part < 1 || part > work_.q) throw std::invalid_argument("start partition uses a part outside 1..q");
        mapped[r] = part;
      }
      const double v = partition_value(work_, mapped);
      if (v < best_) best_ = v, incumbent_ = mapped;
    }

    struct Node {
      CubeFace face;
      int depth = 0;
      double bound = 0.0;
      std::size_t id = 0;
    };
    auto worse = [](const Node& a, const Node& b) {
      if (a.bound != b.bound) return a.bound > b.bound;
      if (a.depth != b.depth) return a.depth < b.depth;
      return a.id < b.id;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
    std::size_t next_id = 0;
    open.push({CubeFace(shape), 0, -std::numeric_limits<double>::infinity(), next_id++});

    bool stopped = false;
    bool root = true;
    while (!open.empty()) {
      if ((cfg_.node_limit && rep.nsub >= cfg_.node_limit) || (cfg_.time_limit > 0 && elapsed() >= cfg_.time_limit)) {
        stopped = true;
        rep.status = cfg_.node_limit && rep.nsub >= cfg_.node_limit ? "node_limit" : "time_limit";
        break;
      }
      Node node = open.top();
      open.pop();
      if (!improves(node.bound)) continue;
      ++rep.nsub;

      CubeFace face = std::move(node.face);
      if (!propagate(face, rep)) continue;

      apply_bounds(face);
      std::optional<LPSolution> sol;
      for (std::size_t round = 0;; ++round) {
        sol = lp_->solve();
        if (sol->status == LPStatus::numerical_failure) {
          lp_->invalidate();
          sol = lp_->solve();
        }
        if (sol->status == LPStatus::numerical_failure)
          throw std::runtime_error("LP failure at node " + std::to_string(node.id) + ": " + sol->diagnostics);
        if (sol->status != LPStatus::optimal || !improves(sol->objective)) break;
        if (first_fractional(*sol) < 0 || round >= cfg_.rounds_per_node) break;
        const std::size_t added = add_cuts(*sol);
        rep.cuts += added;
        if (!added) break;
      }
      const bool feasible = sol->status == LPStatus::optimal;
      if (root) {
        rep.root_bound = feasible ? sol->objective : std::numeric_limits<double>::infinity();
        root = false;
      }
      if (cfg_.trace)
        cfg_.trace({node.id, node.depth, node.bound, feasible ? sol->objective : std::nan(""), &face});
      if (!feasible || !improves(sol->objective)) continue;

      const long k = first_fractional(*sol);
      if (k < 0) {
        std::vector<int> part(work_.p);
        for (std::size_t c = 0; c < shape.cell_count(); ++c)
          if (sol->x[lay_->x_var[c]] > 0.5) part[shape.cell(c).i - 1] = shape.cell(c).j;
        const double v = partition_value(work_, part);
        if (v < best_) best_ = v, incumbent_ = part;
        continue;
      }
      const CellIndex cell = shape.cell(static_cast<std::size_t>(k));
      Node zero{face, node.depth + 1, sol->objective, next_id++};
      zero.face.zeros.set(static_cast<std::size_t>(k));
      Node one{face, node.depth + 1, sol->objective, next_id++};
      one.face.ones.set(static_cast<std::size_t>(k));
      detail::fix_row_to(shape, one.face, cell.i, cell.j);
      open.push(std::move(zero));
      open.push(std::move(one));
    }

    rep.cpu_s = elapsed();
    rep.finished = !stopped;
    if (rep.finished) rep.status = "optimal";
    rep.optimum = best_;
    double lb = best_;
    if (stopped) {
      while (!open.empty()) {
        lb = std::min(lb, open.top().bound);
        open.pop();
      }
    }
    rep.lower_bound = std::max(0.0, lb);
    rep.gap = rep.finished || best_ <= 0 ? 0.0 : 100.0 * (best_ - rep.lower_bound) / best_;
    rep.partition.assign(work_.p, 0);
    for (int r = 0; r < work_.p; ++r) rep.partition[order_[r] - 1] = incumbent_[r];
    rep.partition = canonical_partition(rep.partition);
    return rep;
  }

 private:
  bool improves(double bound) const {
    if (!std::isfinite(best_)) return true;
    if (integral_) return std::ceil(bound - 1e-6) < best_ - 0.5;
    return bound < best_ - 1e-6;
  }

  // Returns false if the node is pruned.
  bool propagate(CubeFace& face, SolveReport& rep) {
    const OrbitopeShape& shape = lay_->shape;
    switch (cfg_.symmetry) {
      case SymmetryMode::off: return true;
      case SymmetryMode::of: {
        auto r = orbitopal_fix(face, shape);
        if (r.infeasible()) return false;
        rep.n_of += r.stats.new_zeros + r.stats.new_ones;
        face = std::move(*r.face);
        return true;
      }
      case SymmetryMode::sci: {
        if (!sci_system_) return true;
        auto r = sequential_fix(*sci_system_, face, false);
        if (r.infeasible()) return false;
        face = std::move(*r.face);
        return true;
      }
      case SymmetryMode::isoprune: {
        if (!is_representative(face, shape)) return false;
        auto r = isoprune_settings(face, shape);
        if (!r) return false;
        face = std::move(*r);
        return true;
      }
    }
    return true;
  }

  void apply_bounds(const CubeFace& face) {
    for (std::size_t c = 0; c < lay_->x_var.size(); ++c) {
      const double lo = face.ones.test(c) ? 1.0 : 0.0;
      const double hi = face.zeros.test(c) ? 0.0 : 1.0;
      lp_->set_bounds(lay_->x_var[c], lo, hi);
    }
  }

  long first_fractional(const LPSolution& sol) const {
    for (std::size_t c = 0; c < lay_->x_var.size(); ++c)
      if (is_fractional(sol.x[lay_->x_var[c]])) return static_cast<long>(c);
    return -1;
  }

  std::size_t add_cuts(const LPSolution& sol) {
    std::size_t added = 0;
    if (cfg_.clique_cuts) {
      std::vector<double> y(lay_->y_var.size());
      for (std::size_t e = 0; e < y.size(); ++e) y[e] = sol.x[lay_->y_var[e]];
      for (const auto& cut : separate_clique(y, work_, {cfg_.threshold, cfg_.cuts_per_round})) {
        LPModel::Terms t;
        for (std::size_t e = 0; e < work_.edges.size(); ++e) {
          const auto& ed = work_.edges[e];
          const bool a = std::binary_search(cut.nodes.begin(), cut.nodes.end(), ed.i);
          const bool b = std::binary_search(cut.nodes.begin(), cut.nodes.end(), ed.k);
          if (a && b) t.emplace_back(lay_->y_var[e], 1.0);
        }
        lp_->add_row(t, RowSense::ge, static_cast<double>(cut.rhs));
        ++added;
      }
    }
    if (cfg_.symmetry == SymmetryMode::sci) {
      std::vector<double> x(lay_->x_var.size());
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = sol.x[lay_->x_var[c]];
      if (auto v = separate_sci(x, lay_->shape)) {
        const LinearInequality li = to_linear(v->inequality, lay_->shape);
        LPModel::Terms t;
        for (const Term& term : li.terms) t.emplace_back(lay_->x_var[term.index], term.coef);
        lp_->add_row(t, RowSense::le, li.rhs);
        ++added;
      }
    }
    return added;
  }

  PartitionInstance orig_;
  SolverConfig cfg_;
  std::vector<int> order_;
  PartitionInstance work_;
  std::unique_ptr<LPModel> lp_;
  std::unique_ptr<ModelLayout> lay_;
  std::optional<InequalitySystem> sci_system_;
  bool integral_ = false;
  std::vector<int> incumbent_;
  double best_ = std::numeric_limits<double>::infinity();
};

inline SolveReport solve(const PartitionInstance& inst, const SolverConfig& cfg = {}) {
  return PartitionSolver(inst, cfg).run();
}

}  // namespace orbitopal
