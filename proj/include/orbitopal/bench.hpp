#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "orbitopal/branch_and_cut.hpp"
#include "orbitopal/partition.hpp"

namespace orbitopal {

struct BenchPlan {
  int p = 16;
  std::vector<int> m_list{55, 83, 111};
  std::vector<int> q_list{3, 4};
  int instances = 3;
  std::uint64_t seed = 1;
  std::vector<SymmetryMode> variants{SymmetryMode::off, SymmetryMode::of};
  double time_limit = 600.0;
  std::size_t node_limit = 0;
  bool clique_cuts = true;
  double threshold = 0.5;
  int workers = 1;
};

// Sixteen-node version of the 40-node classes: the sparse/medium/dense edge
// densities 360, 540 and 720 out of 780 pairs carried over to 120 pairs.
inline BenchPlan default_plan() { return BenchPlan{}; }

inline void validate(const BenchPlan& plan) {
  if (plan.variants.empty()) throw std::invalid_argument("bench plan has no variants");
  if (plan.m_list.empty() || plan.q_list.empty()) throw std::invalid_argument("bench plan needs m and q values");
  if (plan.instances < 1) throw std::invalid_argument("bench plan needs at least one instance per class");
  if (plan.workers < 1) throw std::invalid_argument("bench plan needs at least one worker");
  const long pairs = static_cast<long>(plan.p) * (plan.p - 1) / 2;
  for (int m : plan.m_list)
    if (m < 0 || m > pairs) throw std::invalid_argument("m=" + std::to_string(m) + " impossible for p=" + std::to_string(plan.p));
  for (int q : plan.q_list)
    if (q < 2 || q > plan.p) throw std::invalid_argument("q=" + std::to_string(q) + " outside 2..p");
}

namespace detail {

template <typename T>
std::vector<T> parse_list(const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T x;
    if (!(is >> x) || !(is >> std::ws).eof()) throw std::invalid_argument("bad list item '" + item + "'");
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

// Flat key=value plan file; '#' starts a comment. Unset keys keep defaults.
inline BenchPlan parse_plan(std::istream& is) {
  BenchPlan plan = default_plan();
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("plan line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    try {
      if (key == "p") plan.p = std::stoi(val);
      else if (key == "m") plan.m_list = detail::parse_list<int>(val);
      else if (key == "q") plan.q_list = detail::parse_list<int>(val);
      else if (key == "instances") plan.instances = std::stoi(val);
      else if (key == "seed") plan.seed = std::stoull(val);
      else if (key == "time_limit") plan.time_limit = std::stod(val);
      else if (key == "node_limit") plan.node_limit = std::stoull(val);
      else if (key == "threshold") plan.threshold = std::stod(val);
      else if (key == "clique_cuts") plan.clique_cuts = val == "1" || val == "true" || val == "on";
      else if (key == "workers") plan.workers = std::stoi(val);
      else if (key == "variants") {
        plan.variants.clear();
        for (const auto& v : detail::parse_list<std::string>(val)) plan.variants.push_back(parse_symmetry(v));
      } else
        throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": value out of range");
    }
  }
  validate(plan);
  return plan;
}

inline std::string instance_name(int p, int m, int idx) {
  return "p" + std::to_string(p) + "-m" + std::to_string(m) + "-i" + std::to_string(idx);
}

// One instance per (m, idx), shared by every q.
inline std::uint64_t instance_seed(const BenchPlan& plan, int m, int idx) {
  return plan.seed * 1000003ULL + static_cast<std::uint64_t>(m) * 101ULL + static_cast<std::uint64_t>(idx);
}

struct BenchRun {
  int p = 0, m = 0, q = 0, idx = 0;
  SymmetryMode variant = SymmetryMode::off;
  SolveReport report;
  std::string error;  // non-empty if the run failed
};

struct BenchResult {
  BenchPlan plan;
  std::vector<BenchRun> runs;

  const BenchRun* find(int m, int q, int idx, SymmetryMode v) const {
    for (const auto& r : runs)
      if (r.m == m && r.q == q && r.idx == idx && r.variant == v) return &r;
    return nullptr;
  }
};

inline void write_record(std::ostream& os, const BenchRun& r) {
  os << "run instance=" << r.report.instance_id << " p=" << r.p << " m=" << r.m << " q=" << r.q
     << " variant=" << to_string(r.variant);
  if (!r.error.empty()) {
    std::string e = r.error;
    for (char& c : e)
      if (c == ' ' || c == '\n') c = '_';
    os << " status=error error=" << e << '\n';
    return;
  }
  os << " status=" << r.report.status << std::setprecision(12) << " optimum=" << r.report.optimum
     << " nsub=" << r.report.nsub << std::fixed << std::setprecision(2) << " cpu_s=" << r.report.cpu_s
     << " n_of=" << r.report.n_of << " cuts=" << r.report.cuts << std::setprecision(4) << " gap=" << r.report.gap
     << std::defaultfloat << '\n';
}

// Runs every (instance, q, variant) triple. Records are written as runs
// complete, one line each.
inline BenchResult run_bench(const BenchPlan& plan, std::ostream* records = nullptr) {
  validate(plan);
  struct Job {
    int m, q, idx;
    SymmetryMode v;
  };
  std::vector<Job> jobs;
  for (int m : plan.m_list)
    for (int q : plan.q_list)
      for (int idx = 1; idx <= plan.instances; ++idx)
        for (SymmetryMode v : plan.variants) jobs.push_back({m, q, idx, v});

  BenchResult res;
  res.plan = plan;
  res.runs.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex out_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      const Job& j = jobs[k];
      BenchRun run{plan.p, j.m, j.q, j.idx, j.v, {}, {}};
      try {
        PartitionInstance inst = generate_instance(plan.p, j.m, instance_seed(plan, j.m, j.idx), j.q);
        SolverConfig cfg;
        cfg.symmetry = j.v;
        cfg.clique_cuts = plan.clique_cuts;
        cfg.threshold = plan.threshold;
        cfg.time_limit = plan.time_limit;
        cfg.node_limit = plan.node_limit;
        cfg.seed = plan.seed;
        run.report = solve(inst, cfg);
      } catch (const std::exception& e) {
        run.error = e.what();
      }
      run.report.instance_id = instance_name(plan.p, j.m, j.idx) + "-q" + std::to_string(j.q);
      run.report.variant = to_string(j.v);
      std::lock_guard<std::mutex> lock(out_mu);
      if (records) {
        write_record(*records, run);
        records->flush();
      }
      res.runs[k] = std::move(run);
    }
  };
  if (plan.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < plan.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return res;
}

struct WinnerCount {
  int a = 0, b = 0, none = 0;
};

inline WinnerCount count_winners(const BenchResult& res, SymmetryMode a, SymmetryMode b, int q_filter = 0) {
  WinnerCount w;
  for (int m : res.plan.m_list)
    for (int q : res.plan.q_list) {
      if (q_filter && q != q_filter) continue;
      for (int idx = 1; idx <= res.plan.instances; ++idx) {
        const BenchRun* ra = res.find(m, q, idx, a);
        const BenchRun* rb = res.find(m, q, idx, b);
        if (!ra || !rb) continue;
        // a failed run counts as unfinished with an unknown gap
        SolveReport x = ra->report, y = rb->report;
        if (!ra->error.empty()) x.finished = false, x.gap = 100.0;
        if (!rb->error.empty()) y.finished = false, y.gap = 100.0;
        switch (compare_winners(x, y)) {
          case Winner::a: ++w.a; break;
          case Winner::b: ++w.b; break;
          case Winner::none: ++w.none; break;
        }
      }
    }
  return w;
}

inline double mean_nsub(const BenchResult& res, SymmetryMode v, int q_filter = 0) {
  double s = 0.0;
  int n = 0;
  for (const auto& r : res.runs)
    if (r.variant == v && (!q_filter || r.q == q_filter) && r.error.empty()) s += double(r.report.nsub), ++n;
  return n ? s / n : 0.0;
}

// Rounded averages per (m, q) class: nsub and cpu per variant, #OF for OF.
inline void write_table(std::ostream& os, const BenchResult& res) {
  const auto& plan = res.plan;
  os << std::setw(4) << "n" << std::setw(6) << "m" << std::setw(4) << "q";
  for (SymmetryMode v : plan.variants) {
    const std::string name = v == SymmetryMode::off ? "basic" : to_string(v);
    os << " | " << std::setw(9) << (name + " nsub") << std::setw(8) << "cpu";
    if (v == SymmetryMode::of) os << std::setw(7) << "#OF";
  }
  os << '\n';
  for (int m : plan.m_list)
    for (int q : plan.q_list) {
      os << std::setw(4) << plan.p << std::setw(6) << m << std::setw(4) << q;
      for (SymmetryMode v : plan.variants) {
        double nsub = 0, cpu = 0, nof = 0;
        int n = 0, failed = 0;
        for (int idx = 1; idx <= plan.instances; ++idx) {
          const BenchRun* r = res.find(m, q, idx, v);
          if (!r) continue;
          if (!r->error.empty()) {
            ++failed;
            continue;
          }
          nsub += double(r->report.nsub);
          cpu += r->report.cpu_s;
          nof += double(r->report.n_of);
          ++n;
        }
        auto avg = [&](double x) { return n ? std::llround(x / n) : 0LL; };
        os << " | " << std::setw(9) << avg(nsub) << std::setw(8) << avg(cpu);
        if (v == SymmetryMode::of) os << std::setw(7) << avg(nof);
        if (failed) os << " (" << failed << " failed)";
      }
      os << '\n';
    }
  if (plan.variants.size() >= 2) {
    const SymmetryMode base = plan.variants[0];
    for (std::size_t k = 1; k < plan.variants.size(); ++k) {
      const auto w = count_winners(res, plan.variants[k], base);
      os << "winners " << to_string(plan.variants[k]) << ":" << to_string(base) << " = " << w.a << ":" << w.b
         << " (not counted " << w.none << ")\n";
    }
  }
}

}  // namespace orbitopal
