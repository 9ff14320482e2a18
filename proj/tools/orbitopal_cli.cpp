#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "orbitopal.hpp"

using namespace orbitopal;

namespace {

// "-" or empty means standard input.
std::string slurp(const std::string& path) {
  std::ostringstream os;
  if (path.empty() || path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    os << in.rdbuf();
  }
  return os.str();
}

// Non-blank, non-comment lines.
std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    out.push_back(line);
  }
  return out;
}

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream& get(const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot write " + path);
    return *file;
  }
};

// ---- fix ----

struct FixArgs {
  std::string input = "-";
  std::string method = "of";
  bool complete = false;
};

int run_fix(const FixArgs& a) {
  const auto lines = content_lines(slurp(a.input));
  if (lines.empty()) throw ParseError("no face record in input");
  for (const auto& line : lines) {
    auto [shape, face] = parse_face(line);
    if (a.complete) {
      auto c = complete_face(face, shape);
      if (c.status != FaceCheck::ok) {
        std::cout << "INFEASIBLE\nflags=0 fixed0=0 fixed1=0\n";
        continue;
      }
      face = c.face;
    }
    FixingOutcome out;
    if (a.method == "of") {
      out = orbitopal_fix(face, shape);
    } else if (a.method == "brute") {
      out = brute_force_fix(face, shape);
    } else if (a.method == "packing") {
      out = packing_fix(face, shape);
    } else {
      const bool affine = a.method.rfind("affine-", 0) == 0;
      const std::string base = affine ? a.method.substr(7) : a.method;
      out = sequential_fix(build_system(shape, base == "ci" ? SystemTag::ci : SystemTag::sci), face, affine);
    }
    if (out.infeasible())
      std::cout << "INFEASIBLE\n";
    else
      std::cout << format_face(shape, *out.face) << '\n';
    std::cout << "flags=" << out.stats.flag_transitions << " fixed0=" << out.stats.new_zeros
              << " fixed1=" << out.stats.new_ones << '\n';
  }
  return 0;
}

// ---- separate ----

int run_separate(const std::string& input, double tolerance) {
  std::istringstream is(slurp(input));
  int p = 0, q = 0;
  if (!(is >> p >> q)) throw ParseError("point file must start with 'p q'");
  const OrbitopeShape shape(p, q);
  std::vector<double> x(shape.cell_count());
  for (double& v : x)
    if (!(is >> v)) throw ParseError("point needs " + std::to_string(shape.cell_count()) + " values");
  std::string extra;
  if (is >> extra) throw ParseError("trailing data after the point: " + extra);
  const auto v = separate_sci(x, shape, tolerance);
  if (!v) {
    std::cout << "NONE\n";
    return 0;
  }
  std::cout << "anchor=" << to_string(v->inequality.anchor) << " shifted=";
  bool first = true;
  for (auto c : v->inequality.shifted.cells()) {
    std::cout << (first ? "" : ",") << to_string(c);
    first = false;
  }
  std::cout << std::setprecision(12) << " violation=" << v->violation << '\n';
  return 0;
}

// ---- solve ----

struct SolveArgs {
  std::string input;
  std::string symmetry = "off";
  std::uint64_t seed = 0;
  double time_limit = 0;
  std::size_t node_limit = 0;
  double threshold = 0.5;
  bool no_cliques = false;
  bool no_star_order = false;
  std::string start;
  bool optimal_start = false;
};

std::vector<int> read_partition(const std::string& path) {
  std::istringstream is(slurp(path));
  std::vector<int> part;
  std::string tok;
  while (is >> tok) {
    if (tok[0] == '#') {
      std::string rest;
      std::getline(is, rest);
      continue;
    }
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) throw ParseError("bad part label '" + tok + "'");
    part.push_back(v);
  }
  return part;
}

int run_solve(const SolveArgs& a) {
  std::istringstream is(slurp(a.input));
  const PartitionInstance inst = read_instance(is);
  SolverConfig cfg;
  cfg.symmetry = parse_symmetry(a.symmetry);
  cfg.seed = a.seed;
  cfg.time_limit = a.time_limit;
  cfg.node_limit = a.node_limit;
  cfg.threshold = a.threshold;
  cfg.clique_cuts = !a.no_cliques;
  cfg.star_order = !a.no_star_order;
  if (!a.start.empty()) cfg.start = read_partition(a.start);
  if (a.optimal_start) {
    // start from a known optimum, as when only the proof of optimality is timed
    SolverConfig pre = cfg;
    pre.time_limit = 0;
    pre.node_limit = 0;
    cfg.start = solve(inst, pre).partition;
  }
  SolveReport rep = solve(inst, cfg);
  rep.instance_id = a.input == "-" ? "stdin" : a.input;
  write_report(std::cout, rep);
  return 0;
}

// ---- gen ----

int run_gen(int p, int m, std::uint64_t seed, int q, const std::string& out) {
  Output o;
  write_instance(o.get(out), generate_instance(p, m, seed, q));
  return 0;
}

// ---- bench ----

struct BenchArgs {
  std::string plan = "default";
  std::string records;
  std::string table;
  int workers = 0;
  double time_limit = -1;
};

int run_bench_cmd(const BenchArgs& a) {
  BenchPlan plan = default_plan();
  if (a.plan != "default") {
    std::istringstream is(slurp(a.plan));
    plan = parse_plan(is);
  }
  if (a.workers > 0) plan.workers = a.workers;
  if (a.time_limit >= 0) plan.time_limit = a.time_limit;
  validate(plan);
  Output rec_out, table_out;
  std::ostream* records = a.records.empty() ? nullptr : &rec_out.get(a.records);
  const auto res = run_bench(plan, records);
  write_table(table_out.get(a.table), res);
  for (const auto& r : res.runs)
    if (!r.error.empty()) std::cerr << "run " << r.report.instance_id << " " << to_string(r.variant) << " failed: " << r.error << '\n';
  return 0;
}

// ---- reduce-vc ----

// Edge-list graph: "n m", then m lines "u v".
VCInstance read_graph(const std::string& path, int k) {
  std::istringstream is(slurp(path));
  std::string line, text;
  while (std::getline(is, line)) {
    const auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    text += line + '\n';
  }
  std::istringstream in(text);
  VCInstance g;
  int m = 0;
  if (!(in >> g.n >> m) || m < 0) throw ParseError("graph file must start with 'n m'");
  for (int e = 0; e < m; ++e) {
    int u, v;
    if (!(in >> u >> v)) throw ParseError("graph file ends before edge " + std::to_string(e + 1));
    g.edges.emplace_back(u, v);
  }
  std::string extra;
  if (in >> extra) throw ParseError("trailing data in graph file: " + extra);
  g.k = k;
  return g;
}

bool has_cover(const VCInstance& g) {
  if (g.n > 24) throw GuardExceeded("vertex cover enumeration limited to 24 nodes");
  for (std::uint32_t s = 0; s < (1u << g.n); ++s) {
    if (std::popcount(s) > g.k) continue;
    bool ok = true;
    for (auto [u, v] : g.edges)
      if (!(s >> (u - 1) & 1) && !(s >> (v - 1) & 1)) ok = false;
    if (ok) return true;
  }
  return false;
}

int run_reduce_vc(const std::string& input, int k, bool certify) {
  const VCInstance g = read_graph(input, k);
  const CoveringFixInstance inst = reduce_vc(g);
  std::cout << format_face_record(to_record(inst)) << '\n';
  std::cout << "kappa=" << inst.kappa << " k_tilde=" << inst.k_tilde << " p=" << inst.p << " q=" << inst.q << '\n';
  if (certify) {
    try {
      const bool feasible = covering_feasible_bruteforce(inst);
      const bool cover = has_cover(g);
      std::cout << "feasible=" << (feasible ? "yes" : "no") << " cover=" << (cover ? "yes" : "no")
                << " agree=" << (feasible == cover ? "yes" : "no") << '\n';
      if (feasible != cover) return 3;
    } catch (const GuardExceeded& e) {
      std::cout << "certify=skipped reason=guard\n";
      std::cerr << e.what() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbitopal fixing, shifted column inequalities and graph partitioning branch-and-cut"};
  app.require_subcommand(1);
  int status = 0;

  FixArgs fa;
  auto* fix = app.add_subcommand("fix", "Fix a face record (one per line)");
  fix->add_option("input", fa.input, "Face record file, - for stdin");
  fix->add_option("--method", fa.method, "Fixing method")
      ->check(CLI::IsMember({"of", "brute", "packing", "sci", "ci", "affine-sci", "affine-ci"}));
  fix->add_flag("--complete", fa.complete, "Close the face under one-fixings first");

  std::string sep_input = "-";
  double sep_tol = kSeparationTolerance;
  auto* sep = app.add_subcommand("separate", "Most violated shifted column inequality of a point");
  sep->add_option("input", sep_input, "Point file: 'p q' then the reduced cells row-major");
  sep->add_option("--tolerance", sep_tol, "Minimum violation")->check(CLI::NonNegativeNumber);

  SolveArgs sa;
  auto* sol = app.add_subcommand("solve", "Solve a graph partitioning instance");
  sol->add_option("input", sa.input, "Instance file, - for stdin")->required();
  sol->add_option("--symmetry", sa.symmetry, "off | of | sci | isoprune")
      ->check(CLI::IsMember({"off", "basic", "of", "sci", "isoprune", "iso"}));
  sol->add_option("--seed", sa.seed, "Seed, carried into the report");
  sol->add_option("--time-limit", sa.time_limit, "Seconds, 0 for none")->check(CLI::NonNegativeNumber);
  sol->add_option("--node-limit", sa.node_limit, "Nodes, 0 for none");
  sol->add_option("--threshold", sa.threshold, "Edge threshold of the clique support graph")
      ->check(CLI::Range(0.0, 1.0));
  sol->add_flag("--no-cliques", sa.no_cliques, "Disable clique separation");
  sol->add_flag("--no-star-order", sa.no_star_order, "Keep the input node order");
  sol->add_option("--start", sa.start, "Start partition file: one part label per node");
  sol->add_flag("--optimal-start", sa.optimal_start, "Solve once and restart from the optimum");

  int gp = 16, gm = 48, gq = 2;
  std::uint64_t gseed = 1;
  std::string gout;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--p", gp, "Nodes")->required()->check(CLI::Range(2, 100000));
  gen->add_option("--m", gm, "Edges")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gseed, "Seed");
  gen->add_option("--q", gq, "Parts written to the header")->check(CLI::Range(2, 100000));
  gen->add_option("-o,--output", gout, "Output file, stdout by default");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run a benchmark plan");
  bench->add_option("--plan", ba.plan, "'default' or a plan file");
  bench->add_option("--records", ba.records, "Record stream file, - for stdout");
  bench->add_option("--table", ba.table, "Table file, stdout by default");
  bench->add_option("--workers", ba.workers, "Concurrent runs")->check(CLI::PositiveNumber);
  bench->add_option("--time-limit", ba.time_limit, "Seconds per run")->check(CLI::NonNegativeNumber);

  std::string vc_input;
  int vc_k = 0;
  bool vc_certify = false;
  auto* vc = app.add_subcommand("reduce-vc", "Vertex cover to covering orbitope fixing");
  vc->add_option("input", vc_input, "Graph file: 'n m' then m lines 'u v'")->required();
  vc->add_option("--k", vc_k, "Cover budget")->required();
  vc->add_flag("--certify", vc_certify, "Check the reduction by enumeration");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fix) status = run_fix(fa);
    else if (*sep) status = run_separate(sep_input, sep_tol);
    else if (*sol) status = run_solve(sa);
    else if (*gen) status = run_gen(gp, gm, gseed, gq, gout);
    else if (*bench) status = run_bench_cmd(ba);
    else if (*vc) status = run_reduce_vc(vc_input, vc_k, vc_certify);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
