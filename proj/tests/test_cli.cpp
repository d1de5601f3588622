#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

#include "helpers.hpp"

namespace fs = std::filesystem;
using namespace wraplay;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("wraplay_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the tool inside the scratch directory; returns its exit status.
  int run(const std::string& args) {
    const std::string cmd =
        "cd '" + dir_.string() + "' && '" WRAPLAY_CLI_PATH "' " + args + " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string file(const std::string& name) const { return read_file((dir_ / name).string()); }
  void put(const std::string& name, const std::string& text) const { write_file((dir_ / name).string(), text); }
  fs::path path(const std::string& name) const { return dir_ / name; }

  void make_graph(const std::string& name = "g.json") {
    ASSERT_EQ(run("corpus --count 1 --seed 3 --modularity 0.3 --out-dir c"), 0);
    fs::copy_file(path("c/graph_small_q030_000.json"), path(name));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, CorpusIsDeterministicAndValid) {
  ASSERT_EQ(run("corpus --class small --modularity 0.4 --count 5 --seed 1 --out-dir a"), 0);
  ASSERT_EQ(run("corpus --class small --modularity 0.4 --count 5 --seed 1 --out-dir b"), 0);
  for (int i = 0; i < 5; ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "graph_small_q040_%03d.json", i);
    const std::string a = file(std::string("a/") + name);
    EXPECT_EQ(a, file(std::string("b/") + name));
    const auto doc = graph_from_json(parse_json(a));
    ASSERT_TRUE(doc.clustering.has_value());
    EXPECT_NEAR(modularity(doc.graph, *doc.clustering), 0.4, 0.02);
    EXPECT_NEAR(density(doc.graph), 0.3, 0.01);
  }
  const auto m = parse_json(file("a/manifest.json"));
  EXPECT_EQ(m["outputs"].size(), 5u);
  EXPECT_EQ(m["seeds"].size(), 5u);
}

TEST_F(Cli, CorpusCountZero) {
  ASSERT_EQ(run("corpus --count 0 --out-dir z"), 0);
  std::size_t graphs = 0;
  for (const auto& e : fs::directory_iterator(path("z"))) graphs += e.path().filename() != "manifest.json";
  EXPECT_EQ(graphs, 0u);
}

TEST_F(Cli, CorpusRejectsBadSpec) {
  EXPECT_EQ(run("corpus --modularity 0.33 --count 1 --out-dir x"), 2);
  EXPECT_EQ(run("corpus --class huge --count 1 --out-dir x"), 2);
  EXPECT_EQ(run("corpus --bogus"), 2);
}

TEST_F(Cli, LayoutIsDeterministic) {
  make_graph();
  ASSERT_EQ(run("layout g.json --topology torus --algo pairwise --seed 7 -o a.json"), 0);
  ASSERT_EQ(run("layout g.json --topology torus --algo pairwise --seed 7 -o b.json"), 0);
  EXPECT_EQ(file("a.json"), file("b.json"));
  ASSERT_EQ(run("layout g.json --topology torus --algo pairwise --seed 8 -o c.json"), 0);
  EXPECT_NE(file("a.json"), file("c.json"));
  const auto doc = load_layout(path("a.json").string());
  EXPECT_EQ(doc.topology, Topology::Torus);
  EXPECT_EQ(doc.seed, 7u);
  const auto m = parse_json(file("a.json.manifest.json"));
  EXPECT_EQ(m["outputs"][0]["fnv1a64"], hex_digest(file("a.json")));
  EXPECT_EQ(m["params"]["tau"], 80.0);
}

TEST_F(Cli, AllPairsTwoNodesSeparatedByL) {
  put("two.json", R"({"nodes":[{"id":0},{"id":1}],"links":[{"source":0,"target":1}]})");
  ASSERT_EQ(run("layout two.json --topology flat --algo allpairs -o l.json"), 0);
  const auto doc = load_layout(path("l.json").string());
  EXPECT_NEAR(norm(doc.planar[1] - doc.planar[0]), doc.L, 1e-2 * doc.L);
}

TEST_F(Cli, SphereLayoutIsUnitNorm) {
  make_graph();
  ASSERT_EQ(run("layout g.json --topology sphere -o s.json"), 0);
  for (const Vec3& p : load_layout(path("s.json").string()).sphere) EXPECT_NEAR(norm(p), 1.0, 1e-9);
}

TEST_F(Cli, ExitCodes) {
  put("bad.json", "{ not json");
  put("split.json", R"({"nodes":[{"id":0},{"id":1},{"id":2}],"links":[{"source":0,"target":1}]})");
  EXPECT_EQ(run("layout bad.json"), 2);
  EXPECT_EQ(run("layout missing.json"), 2);
  EXPECT_EQ(run("layout split.json"), 3);
  make_graph();
  EXPECT_EQ(run("layout g.json --topology klein"), 2);
  EXPECT_EQ(run("layout g.json --tau 300"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, NotConvergedStillExitsZero) {
  make_graph();
  ASSERT_EQ(run("layout g.json --tau 2 --tau-max 3 --delta-stop 1e-12 -o l.json"), 0);
  EXPECT_FALSE(load_layout(path("l.json").string()).converged);
}

TEST_F(Cli, AutopanMetricsRender) {
  make_graph();
  ASSERT_EQ(run("layout g.json --seed 2 -o l.json"), 0);
  ASSERT_EQ(run("metrics l.json g.json -o before.json"), 0);
  ASSERT_EQ(run("autopan l.json g.json -o p.json"), 0);
  const auto panned = load_layout(path("p.json").string());
  ASSERT_TRUE(panned.pan.has_value());
  EXPECT_EQ(panned.planar, load_layout(path("l.json").string()).planar);  // positions untouched, view recorded
  ASSERT_EQ(run("metrics p.json g.json -o after.json"), 0);
  const auto before = parse_json(file("before.json")), after = parse_json(file("after.json"));
  EXPECT_LE(after["wrapcost"].get<double>(), before["wrapcost"].get<double>() * (1 + 1e-12));
  EXPECT_EQ(after["crossings"], before["crossings"]);

  ASSERT_EQ(run("render p.json g.json --mode torus-nocontext -o none.svg"), 0);
  ASSERT_EQ(run("render p.json g.json --mode torus-full -o full.svg"), 0);
  auto circles = [](const std::string& s) {
    std::size_t n = 0;
    for (std::size_t at = s.find("<circle"); at != std::string::npos; at = s.find("<circle", at + 1)) ++n;
    return n;
  };
  EXPECT_EQ(circles(file("full.svg")), 9 * circles(file("none.svg")));
  EXPECT_TRUE(fs::exists(path("full.svg.manifest.json")));
  EXPECT_EQ(run("render p.json g.json --mode flat -o x.svg"), 2);
}

TEST_F(Cli, MetricsCsvAppend) {
  make_graph();
  ASSERT_EQ(run("layout g.json -o l.json"), 0);
  ASSERT_EQ(run("metrics l.json g.json --csv m.csv --name g"), 0);
  ASSERT_EQ(run("metrics l.json g.json --csv m.csv --name g"), 0);
  const std::string csv = file("m.csv");
  const auto first_nl = csv.find('\n');
  EXPECT_EQ(csv.substr(0, first_nl), MetricsRow::header());
  const auto second_nl = csv.find('\n', first_nl + 1);
  const std::string row1 = csv.substr(first_nl + 1, second_nl - first_nl - 1);
  const std::string row2 = csv.substr(second_nl + 1, csv.size() - second_nl - 2);
  EXPECT_EQ(row1, row2);
  EXPECT_EQ(row1.rfind("g,torus,pairwise,", 0), 0u);
}

TEST_F(Cli, SphereAutorotateAndRender) {
  make_graph();
  ASSERT_EQ(run("layout g.json --topology sphere -o s.json"), 0);
  ASSERT_EQ(run("autopan s.json g.json --trials 50 --seed 3 -o r.json"), 0);
  ASSERT_TRUE(load_layout(path("r.json").string()).rotate.has_value());
  ASSERT_EQ(run("autopan s.json g.json --objective boundary-pixels --trials 5 -o rb.json"), 0);
  ASSERT_EQ(run("render rb.json g.json --projection equal-earth -o s.svg --mask m.pbm"), 0);
  const std::string pbm = file("m.pbm");
  EXPECT_EQ(pbm.substr(0, 11), "P4\n900 317\n");
  EXPECT_EQ(pbm.size(), 11u + 317u * 113u);
  ASSERT_EQ(run("render rb.json g.json --projection orthographic-hemisphere -o o.svg"), 0);
  EXPECT_EQ(run("autopan s.json g.json --objective nope"), 2);
  ASSERT_EQ(run("layout g.json --topology flat -o f.json"), 0);
  EXPECT_EQ(run("autopan f.json g.json"), 2);
}

TEST_F(Cli, BenchProductAndDeterminism) {
  ASSERT_EQ(run("corpus --count 1 --seed 5 --out-dir c"), 0);
  ASSERT_EQ(run("bench c --seeds 2 --algos pairwise-torus pairwise-flat -o a.csv --summary s.json"), 0);
  ::setenv("WRAPLAY_THREADS", "1", 1);
  ASSERT_EQ(run("bench c --seeds 2 --algos pairwise-torus pairwise-flat -o b.csv"), 0);
  ::unsetenv("WRAPLAY_THREADS");
  const std::string a = file("a.csv");
  EXPECT_EQ(a, file("b.csv"));
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 4u);
  const auto s = parse_json(file("s.json"));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(run("bench c --algos warp-drive"), 2);
}
