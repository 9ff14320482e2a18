#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "orbitopal.hpp"

using namespace orbitopal;

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is dropped.
Result cli(const std::string& args) {
  const std::string cmd = std::string(ORBITOPAL_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(ORBITOPAL_DATA) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, GenRoundTrip) {
  for (std::uint64_t seed : {1u, 7u, 99u}) {
    const auto r = cli("gen --p 16 --m 48 --seed " + std::to_string(seed));
    ASSERT_EQ(r.status, 0);
    std::istringstream is(r.out);
    EXPECT_EQ(read_instance(is), generate_instance(16, 48, seed));
  }
  EXPECT_NE(cli("gen --p 4 --m 7").status, 0);
}

TEST(Cli, FixFirstWitnessFace) {
  const auto r = cli("fix " + data("f1_face.txt"));
  ASSERT_EQ(r.status, 0);
  const auto ls = lines_of(r.out);
  ASSERT_EQ(ls.size(), 2u);
  auto [shape, face] = parse_face(ls[0]);
  EXPECT_TRUE(face.ones.test(shape.index(2, 2)));
  EXPECT_EQ(ls[1].rfind("flags=", 0), 0u);
  EXPECT_NE(ls[1].find("fixed1=1"), std::string::npos);

  // column inequalities alone fix nothing here
  const auto ci = cli("fix --method ci " + data("f1_face.txt"));
  ASSERT_EQ(ci.status, 0);
  auto [s2, f2] = parse_face(lines_of(ci.out)[0]);
  EXPECT_FALSE(f2.ones.test(s2.index(2, 2)));
}

TEST(Cli, FixInfeasibleAndMalformed) {
  const auto f = temp_file("inf.txt", "4 3 ; zeros: (3,1) (3,2) (2,2) ; ones:\n");
  const auto r = cli("fix " + f);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(lines_of(r.out)[0], "INFEASIBLE");
  EXPECT_NE(cli("fix " + temp_file("bad.txt", "4 3 zeros (3,1)\n")).status, 0);
  // one-fixing without the rest of its row is rejected unless completed
  const auto open = temp_file("open.txt", "3 3 ; zeros: ; ones: (2,2)\n");
  EXPECT_NE(cli("fix " + open).status, 0);
  EXPECT_EQ(cli("fix --complete " + open).status, 0);
}

TEST(Cli, Separate) {
  const auto r = cli("separate " + data("point_3x2.txt"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("anchor=(2,2) shifted=(1,1) violation=0.4", 0), 0u);
  const auto none = cli("separate " + temp_file("pt.txt", "2 2\n1\n1 0\n"));
  EXPECT_EQ(none.out, "NONE\n");
  EXPECT_NE(cli("separate " + temp_file("short.txt", "2 2\n1 1\n")).status, 0);
}

TEST(Cli, SolveMatchesLibrary) {
  std::ifstream in(data("sample_instance.txt"));
  const auto inst = read_instance(in);
  const double want = solve(inst).optimum;
  for (const char* mode : {"off", "of", "sci", "isoprune"}) {
    const auto r = cli("solve " + data("sample_instance.txt") + " --symmetry " + mode + " --seed 3");
    ASSERT_EQ(r.status, 0) << mode;
    std::map<std::string, std::string> kv;
    for (const auto& l : lines_of(r.out)) {
      const auto eq = l.find('=');
      ASSERT_NE(eq, std::string::npos) << l;
      kv[l.substr(0, eq)] = l.substr(eq + 1);
    }
    EXPECT_EQ(std::stod(kv["optimum"]), want) << mode;
    EXPECT_EQ(kv["status"], "optimal");
    for (const char* key : {"nsub", "cpu_s", "n_of", "cuts", "gap"}) EXPECT_TRUE(kv.count(key)) << key;
  }
  EXPECT_NE(cli("solve " + data("sample_instance.txt") + " --symmetry orbital").status, 0);
  EXPECT_NE(cli("solve " + data("sample_instance.txt") + " --threshold 2").status, 0);
  EXPECT_NE(cli("solve " + temp_file("trunc.txt", "4 3 2\n1 2 1\n")).status, 0);
}

TEST(Cli, SolveWithStart) {
  const auto start = temp_file("start.txt", "1 2 3 1 2 3 1 2 3 1 2 3\n");
  const auto r = cli("solve " + data("sample_instance.txt") + " --start " + start + " --optimal-start");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("status=optimal"), std::string::npos);
  EXPECT_NE(cli("solve " + data("sample_instance.txt") + " --start " + temp_file("s.txt", "1 2\n")).status, 0);
}

TEST(Cli, BenchPlanFile) {
  const auto rec = ::testing::TempDir() + "records.txt";
  const auto r = cli("bench --plan " + data("small_plan.txt") + " --records " + rec);
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("basic nsub"), std::string::npos);
  EXPECT_NE(r.out.find("winners of:off"), std::string::npos);
  std::ifstream in(rec);
  std::set<std::string> seen;
  for (std::string l; std::getline(in, l);) {
    ASSERT_EQ(l.rfind("run instance=", 0), 0u);
    const auto id = l.substr(0, l.find(" status="));
    EXPECT_TRUE(seen.insert(id).second) << l;
  }
  EXPECT_EQ(seen.size(), 8u);
  EXPECT_NE(cli("bench --plan " + temp_file("empty.txt", "variants=\n")).status, 0);
}

TEST(Cli, ReduceVertexCover) {
  const auto yes = cli("reduce-vc " + data("c5_graph.txt") + " --k 3 --certify");
  ASSERT_EQ(yes.status, 0);
  const auto ls = lines_of(yes.out);
  ASSERT_EQ(ls.size(), 3u);
  const auto rec = parse_face_record(ls[0]);
  EXPECT_TRUE(rec.ones.empty());
  EXPECT_EQ(ls[1], "kappa=2 k_tilde=3 p=7 q=10");
  EXPECT_EQ(ls[2], "feasible=yes cover=yes agree=yes");
  // an odd cycle on five nodes needs three cover nodes
  const auto no = cli("reduce-vc " + data("c5_graph.txt") + " --k 2 --certify");
  EXPECT_EQ(lines_of(no.out).back(), "feasible=no cover=no agree=yes");
  EXPECT_NE(cli("reduce-vc " + data("c5_graph.txt") + " --k 0").status, 0);
}

TEST(Cli, HelpAndErrors) {
  for (const char* sub : {"fix", "separate", "solve", "gen", "bench", "reduce-vc"}) {
    const auto r = cli(std::string(sub) + " --help");
    EXPECT_EQ(r.status, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
  EXPECT_NE(cli("").status, 0);
  EXPECT_NE(cli("frobnicate").status, 0);
  EXPECT_NE(cli("gen --p 5 --m 3 --colour red").status, 0);
}
