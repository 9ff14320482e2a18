// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "orbitopal.hpp"

using namespace orbitopal;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// ---- oracle equivalence ----

Verdict oracle_equivalence() {
  std::size_t faces = 0, mismatches = 0;
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= p; ++q) {
      OrbitopeShape s(p, q);
      oracle::for_each_ready_face(s, [&](const CubeFace& f) {
        ++faces;
        if (!(orbitopal_fix(f, s) == brute_force_fix(f, s))) ++mismatches;
      });
    }
  std::mt19937_64 rng(20071);
  for (auto [p, q] : {std::pair{5, 3}, std::pair{6, 4}}) {
    OrbitopeShape s(p, q);
    for (int t = 0; t < 10000; ++t) {
      const CubeFace f = (t % 2) ? oracle::random_ready_face(s, rng)
                                 : oracle::random_face_around(s, oracle::random_growth_string(p, q, rng), rng);
      ++faces;
      if (!(orbitopal_fix(f, s) == brute_force_fix(f, s))) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(faces) + " faces, " + std::to_string(mismatches) + " mismatches"};
}

// ---- three witness faces ----

Verdict witnesses() {
  const OrbitopeShape s5(5, 4), s4(4, 4);
  const CubeFace f1 = make_face(s5, {{3, 2}, {5, 1}, {5, 2}, {5, 3}}, {{1, 1}, {5, 4}});
  const CubeFace f2 = make_face(s4, {{3, 2}, {4, 1}, {4, 2}}, {{1, 1}});
  auto fixes_x22 = [](const FixingOutcome& r, const OrbitopeShape& s) {
    return !r.infeasible() && r.face->ones.test(s.index(2, 2));
  };
  const auto ci5 = build_system(s5, SystemTag::ci), sci5 = build_system(s5, SystemTag::sci);
  const auto ci4 = build_system(s4, SystemTag::ci), sci4 = build_system(s4, SystemTag::sci);
  const bool one = fixes_x22(sequential_fix(sci5, f1, false), s5) && sequential_fix(ci5, f1, false) == FixingOutcome{f1, {}};
  const bool two = fixes_x22(sequential_fix(ci4, f2, true), s4) && sequential_fix(sci4, f2, false) == FixingOutcome{f2, {}};
  const bool three = fixes_x22(sequential_fix(sci5, f1, true), s5) && !fixes_x22(sequential_fix(ci5, f1, true), s5);
  std::ostringstream os;
  os << "F1 sci-only=" << one << " F2 affine-ci-only=" << two << " F3 affine-sci-over-affine-ci=" << three;
  return {one && two && three, os.str()};
}

// ---- affine SCI sequential fixing vs orbitopal fixing ----

Verdict affine_sci_equivalence() {
  std::size_t faces = 0, mismatches = 0;
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= p; ++q) {
      OrbitopeShape s(p, q);
      const auto sys = build_system(s, SystemTag::sci);
      oracle::for_each_ready_face(s, [&](const CubeFace& f) {
        ++faces;
        if (!(sequential_fix(sys, f, true) == orbitopal_fix(f, s))) ++mismatches;
      });
    }
  return {mismatches == 0, std::to_string(faces) + " faces, " + std::to_string(mismatches) + " mismatches"};
}

// ---- sequential vs simultaneous on the four-variable system ----

Verdict weak_sequential() {
  const auto a = weak_sequential_polytope();
  CubeFace face(4);
  face.zeros.set(3);
  // simultaneous fixing by direct 0/1 enumeration
  std::vector<int> seen_one(4, 0), seen_zero(4, 0);
  int points = 0;
  for (int m = 0; m < 16; ++m) {
    if (m >> 3 & 1) continue;
    bool ok = true;
    for (const auto& ineq : a) {
      double lhs = 0;
      for (const auto& t : ineq.terms) lhs += t.coef * (m >> t.index & 1);
      ok = ok && lhs <= ineq.rhs + 1e-12;
    }
    if (!ok) continue;
    ++points;
    for (int k = 0; k < 4; ++k) (m >> k & 1 ? seen_one : seen_zero)[k] = 1;
  }
  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < 4; ++k)
    if (!seen_one[k]) zeros.push_back(k);
  const auto cmp = weak_sequential_demo();
  const bool seq_nothing = !cmp.sequential.infeasible() && *cmp.sequential.face == face;
  const bool simul = !cmp.simultaneous.infeasible() && cmp.simultaneous.face->zeros.elements() == zeros &&
                     zeros == std::vector<std::size_t>{2, 3} && cmp.simultaneous.face->ones.none();
  std::ostringstream os;
  os << points << " feasible points; sequential fixes nothing=" << seq_nothing << " simultaneous I0*={3,4}=" << simul;
  return {points > 0 && seq_nothing && simul, os.str()};
}

// ---- linear time ----

double median_fix_seconds(int p, int q, std::mt19937_64& rng, std::size_t& worst_ratio_violations) {
  OrbitopeShape s(p, q);
  std::vector<double> times;
  for (int t = 0; t < 41; ++t) {
    const CubeFace f = oracle::random_face_around(s, oracle::random_growth_string(p, q, rng), rng, 0.2, 0.01);
    constexpr int reps = 20;
    std::size_t flags = 0;
    const auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) flags = orbitopal_fix(f, s).stats.flag_transitions;
    times.push_back(seconds_since(t0) / reps);
    if (flags > static_cast<std::size_t>(p) * static_cast<std::size_t>(q)) ++worst_ratio_violations;
  }
  std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
  return times[times.size() / 2];
}

Verdict linear_time() {
  std::mt19937_64 rng(4242);
  std::size_t violations = 0;
  // every exhaustive face as well
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= p; ++q) {
      OrbitopeShape s(p, q);
      oracle::for_each_ready_face(s, [&](const CubeFace& f) {
        if (orbitopal_fix(f, s).stats.flag_transitions > static_cast<std::size_t>(p * q)) ++violations;
      });
    }
  median_fix_seconds(200, 50, rng, violations);  // warm-up
  const double small = median_fix_seconds(200, 50, rng, violations);
  const double large = median_fix_seconds(400, 100, rng, violations);
  const double ratio = large / small;
  std::ostringstream os;
  os << "flag bound violations=" << violations << " median " << small * 1e6 << "us -> " << large * 1e6
     << "us, ratio " << ratio << " (<= 5)";
  return {violations == 0 && ratio <= 5.0, os.str()};
}

// ---- packing ----

std::vector<BitSet> packing_by_definition(const OrbitopeShape& s) {
  const int p = s.rows(), q = s.cols();
  std::vector<BitSet> out;
  std::vector<int> c(p, 0);
  while (true) {
    std::vector<std::uint64_t> col(q + 1, 0);
    for (int i = 1; i <= p; ++i)
      if (c[i - 1]) col[c[i - 1]] |= std::uint64_t{1} << (p - i);
    bool sorted = true;
    for (int j = 1; j < q; ++j) sorted = sorted && col[j] >= col[j + 1];
    bool reduced = true;
    for (int i = 1; i <= p; ++i) reduced = reduced && c[i - 1] <= std::min(i, q);
    if (sorted && reduced) {
      BitSet b(s.cell_count());
      for (int i = 1; i <= p; ++i)
        if (c[i - 1]) b.set(s.index(i, c[i - 1]));
      out.push_back(b);
    }
    int r = p - 1;
    while (r >= 0 && c[r] == q) c[r--] = 0;
    if (r < 0) break;
    ++c[r];
  }
  return out;
}

Verdict packing() {
  std::size_t faces = 0, mismatches = 0;
  for (int p = 2; p <= 4; ++p)
    for (int q = 2; q <= std::min(p, 3); ++q) {
      OrbitopeShape s(p, q);
      const auto verts = packing_by_definition(s);
      const std::size_t n = s.cell_count();
      std::vector<int> st(n, 0);
      while (true) {
        CubeFace f(n);
        for (std::size_t k = 0; k < n; ++k) {
          if (st[k] == 1) f.zeros.set(k);
          if (st[k] == 2) f.ones.set(k);
        }
        ++faces;
        const auto got = packing_fix(f, s);
        if (!oracle::same(got, oracle::fix_over(verts, f)) || !(got == packing_brute_force_fix(f, s))) ++mismatches;
        std::size_t r = 0;
        while (r < n && st[r] == 2) st[r++] = 0;
        if (r == n) break;
        ++st[r];
      }
    }
  return {mismatches == 0, std::to_string(faces) + " faces, " + std::to_string(mismatches) + " mismatches"};
}

// ---- covering reduction ----

bool has_cover(int n, const std::vector<std::pair<int, int>>& edges, int k) {
  for (unsigned s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) > k) continue;
    bool ok = true;
    for (auto [u, v] : edges) ok = ok && ((s >> (u - 1) & 1) || (s >> (v - 1) & 1));
    if (ok) return true;
  }
  return false;
}

Verdict covering() {
  std::size_t cases = 0, mismatches = 0, guarded = 0, degenerate = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> all;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) all.emplace_back(u, v);
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t e = 0; e < all.size(); ++e)
        if (mask >> e & 1) edges.push_back(all[e]);
      for (int k = 0; k <= std::min(3, n); ++k) {
        CoveringFixInstance inst;
        try {
          inst = reduce_vc({n, edges, k});
        } catch (const DegenerateInstance&) {
          ++degenerate;  // k = 0 or no edges
          continue;
        }
        try {
          ++cases;
          if (covering_feasible_bruteforce(inst) != has_cover(n, edges, k)) ++mismatches;
        } catch (const GuardExceeded&) {
          --cases;
          ++guarded;
        }
      }
    }
  }
  // the 14-node example with k = 7
  const std::vector<std::pair<int, int>> example = {{1, 2}, {1, 3}, {1, 4}, {3, 4}, {4, 5},
                                                {5, 6}, {7, 8}, {9, 10}, {11, 12}, {13, 14}};
  const auto inst = reduce_vc({14, example, 7});
  bool pattern = inst.p == 13 && inst.q == 28 && inst.kappa == 3;
  for (int i = 1; i <= inst.p; ++i)
    for (int j = 1; j <= inst.q; ++j) {
      bool zero = false;
      if (i > 3) {
        const auto [u, v] = example[i - 4];
        zero = j != 2 * u && j != 2 * v;
      }
      pattern = pattern && inst.is_zero(i, j) == zero;
    }
  const auto m = build_cover_vertex(inst, {2, 6, 10, 14, 18, 22, 26});
  const bool vertex = is_feasible_covering_vertex(m, inst);
  std::ostringstream os;
  os << cases << " (graph, k) pairs, " << mismatches << " mismatches, " << guarded << " over guard, " << degenerate
     << " degenerate skipped; example I0 pattern=" << pattern << " cover vertex=" << vertex;
  return {mismatches == 0 && guarded == 0 && pattern && vertex, os.str()};
}

// ---- SCI validity and separation ----

double max_violation_naive(const OrbitopeShape& s, const std::vector<double>& x) {
  double best = -1e300;
  for (int i = 2; i <= s.rows(); ++i)
    for (int j = 2; j <= std::min(i, s.cols()); ++j) {
      double bar = 0;
      for (int l = j; l <= std::min(i, s.cols()); ++l) bar += x[s.index(i, l)];
      const int eta = i - j + 1;
      // shifted columns: one cell per diagonal, columns non-decreasing, < j
      std::function<void(int, int, double)> rec = [&](int k, int lo, double sum) {
        if (k > eta) {
          best = std::max(best, bar - sum);
          return;
        }
        for (int c = lo; c < j; ++c) {
          const CellIndex cell{c + k - 1, c};
          if (s.contains(cell)) rec(k + 1, c, sum + x[s.index(cell)]);
        }
      };
      rec(1, 1, 0.0);
    }
  return best;
}

Verdict sci() {
  std::size_t checked = 0, invalid = 0, sep_mismatch = 0, points = 0;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p = 2; p <= 6; ++p)
    for (int q = 2; q <= std::min(p, 4); ++q) {
      OrbitopeShape s(p, q);
      const auto verts = oracle::definitional_vertices(s);
      for (const auto& ineq : all_scis(s)) {
        const auto lin = to_linear(ineq, s);
        for (const auto& v : verts) {
          double lhs = 0;
          for (const auto& t : lin.terms) lhs += t.coef * v.test(t.index);
          ++checked;
          if (lhs > lin.rhs + 1e-12) ++invalid;
        }
      }
      for (int t = 0; t < 1000; ++t) {
        std::vector<double> x(s.cell_count());
        for (int i = 1; i <= p; ++i) {
          double total = 0;
          for (int j = 1; j <= std::min(i, q); ++j) total += (x[s.index(i, j)] = u(rng));
          for (int j = 1; j <= std::min(i, q); ++j) x[s.index(i, j)] /= total;
        }
        ++points;
        const double want = max_violation_naive(s, x);
        const auto got = separate_sci(x, s);
        if (got.has_value() != (want > kSeparationTolerance)) ++sep_mismatch;
        else if (got && (std::abs(got->violation - want) > 1e-9 || !is_valid_sci(got->inequality, s) ||
                         std::abs(evaluate(got->inequality, x, s) - want) > 1e-9))
          ++sep_mismatch;
      }
    }
  std::ostringstream os;
  os << checked << " (inequality, vertex) checks, " << invalid << " violated; " << points << " points, " << sep_mismatch
     << " separation mismatches";
  return {invalid == 0 && sep_mismatch == 0, os.str()};
}

// ---- solver exactness ----

double enumerate_optimum(const PartitionInstance& inst) {
  std::vector<int> a(inst.p, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double v = 0;
    for (const auto& e : inst.edges)
      if (a[e.i - 1] == a[e.k - 1]) v += e.w;
    best = std::min(best, v);
    int r = inst.p - 1;
    while (r >= 0 && a[r] == inst.q - 1) a[r--] = 0;
    if (r < 0) break;
    ++a[r];
  }
  return best;
}

Verdict solver_exactness() {
  std::mt19937_64 rng(31337);
  int wrong = 0;
  for (int t = 0; t < 50; ++t) {
    const int p = 6 + t % 5;
    const int q = 2 + t % 3;
    const int pairs = p * (p - 1) / 2;
    const int m = std::uniform_int_distribution<int>(pairs / 3, pairs)(rng);
    const auto inst = generate_instance(p, m, rng(), q);
    const double want = enumerate_optimum(inst);
    for (SymmetryMode mode : {SymmetryMode::off, SymmetryMode::of, SymmetryMode::sci, SymmetryMode::isoprune}) {
      SolverConfig cfg;
      cfg.symmetry = mode;
      const auto rep = solve(inst, cfg);
      if (rep.optimum != want || !rep.finished || partition_value(inst, rep.partition) != want) ++wrong;
    }
  }
  return {wrong == 0, "50 instances x 4 modes, " + std::to_string(wrong) + " wrong"};
}

// ---- symmetry benefit ----

Verdict symmetry_benefit() {
  BenchPlan plan = default_plan();
  plan.q_list = {4};
  const auto t0 = clock_type::now();
  const auto res = run_bench(plan);
  const double total = seconds_since(t0);
  const double nsub_of = mean_nsub(res, SymmetryMode::of, 4), nsub_basic = mean_nsub(res, SymmetryMode::off, 4);
  const auto w = count_winners(res, SymmetryMode::of, SymmetryMode::off, 4);
  int failed = 0;
  for (const auto& r : res.runs) failed += !r.error.empty();
  const int counted = w.a + w.b;
  const double share = counted ? double(w.a) / counted : 0.0;
  std::ostringstream os;
  os << "mean nsub OF " << nsub_of << " vs basic " << nsub_basic << "; winners OF:basic = " << w.a << ":" << w.b
     << " (" << w.none << " within thresholds), share of counted " << 100 * share << "%, share of all "
     << 100.0 * w.a / (w.a + w.b + w.none) << "%; " << failed << " failed runs; bench " << total << " s";
  return {failed == 0 && nsub_of < nsub_basic && counted > 0 && share >= 0.7 && total < 1800, os.str()};
}

// ---- clique rhs ----

long min_intra_pairs(int n, int q) {
  long best = -1;
  std::vector<int> a(n, 0);
  while (true) {
    std::vector<long> cnt(q, 0);
    for (int v : a) ++cnt[v];
    long s = 0;
    for (long c : cnt) s += c * (c - 1) / 2;
    if (best < 0 || s < best) best = s;
    int r = n - 1;
    while (r >= 0 && a[r] == q - 1) a[r--] = 0;
    if (r < 0) break;
    ++a[r];
  }
  return best;
}

Verdict clique_rhs_check() {
  int checked = 0, wrong = 0;
  for (int q : {3, 4})
    for (int n = q + 1; n <= 2 * q; ++n) {
      ++checked;
      if (clique_rhs(n, q) != min_intra_pairs(n, q)) ++wrong;
    }
  return {wrong == 0, std::to_string(checked) + " sizes, " + std::to_string(wrong) + " wrong"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"witness faces", witnesses},
      {"affine SCI equivalence", affine_sci_equivalence},
      {"sequential vs simultaneous", weak_sequential},
      {"linear time", linear_time},
      {"packing", packing},
      {"covering reduction", covering},
      {"SCI validity and separation", sci},
      {"solver exactness", solver_exactness},
      {"symmetry benefit", symmetry_benefit},
      {"clique cut rhs", clique_rhs_check},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = clock_type::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << " [" << std::fixed
              << std::setprecision(1) << seconds_since(t0) << " s]" << std::defaultfloat << std::endl;
    failures += !v.pass;
  }
  return failures ? 1 : 0;
}
