#include "exploded/datasets.hpp"
#include "exploded/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace exploded;
using io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("exploded_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(const std::string& args) const {
    auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    std::string cmd = std::string(EXPLODED_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    int raw = std::system(cmd.c_str());
    Outcome r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  void write(const std::string& name, const std::string& kind, const json& body) const {
    io::write_file(path(name), io::dump(io::document(kind, body)));
  }

  fs::path dir_;
};

// Segment t -> a + t v, t in [0,1], into the quadrant.
io::MapBundle segment(const IntegerVector& a, const IntegerVector& v) {
  io::MapBundle m;
  m.source = datasets::interval(0, 1, "a", "b", "e");
  m.target = datasets::quadrant();
  IntegerMatrix lin{{v[0]}, {v[1]}};
  RationalVector start = to_rational(a), end{Rational(a[0] + v[0]), Rational(a[1] + v[1])};
  m.map.functor = {{"e", "Q"}, {"a", "Q"}, {"b", "Q"}};
  m.map.maps["e"] = IntegralAffineMap(lin, start);
  m.map.maps["a"] = IntegralAffineMap(IntegerMatrix(2, 0), start);
  m.map.maps["b"] = IntegralAffineMap(IntegerMatrix(2, 0), end);
  return m;
}

Subdivision diagonal_split(const AffineComplex& c, const std::string& top) {
  return make_subdivision(
      c, {{top, {Polyhedron(2, {{{1, -1}, 0}, {{0, 1}, 0}}), Polyhedron(2, {{{-1, 1}, 0}, {{1, 0}, 0}})}}});
}

TEST_F(Cli, M04ExampleValidates) {
  auto r = run("examples --name m04 --out " + path("m04.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  auto c = io::decode_complex(io::open_document(io::read_file(path("m04.json")), "complex"));
  EXPECT_EQ(c.size(), 4u);
  std::size_t rays = 0;
  for (const auto& s : c.strata()) rays += s.dim == 1;
  EXPECT_EQ(rays, 3u);
  auto v = run("validate " + path("m04.json"));
  EXPECT_EQ(v.status, 0);
  EXPECT_TRUE(json::parse(v.out)["ok"].get<bool>());
}

TEST_F(Cli, ModuliAsComplexThenValidate) {
  auto r = run("moduli --n 4 --as-complex " + path("m.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(run("validate " + path("m.json")).status, 0);
  auto c = io::decode_complex(io::read_file(path("m.json")));
  EXPECT_EQ(c.size(), 4u);
}

TEST_F(Cli, ModuliListAndPoset) {
  auto r = run("moduli --n 5 --list");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 27);  // header + 26 types
  auto d = run("moduli --n 4 --poset-dot");
  EXPECT_EQ(std::count(d.out.begin(), d.out.end(), '>'), 3);
  EXPECT_NE(d.out.find("\"(1,2,3,4)\";"), std::string::npos);
  EXPECT_EQ(run("moduli --n 2").status, 2);
}

TEST_F(Cli, SymplecticSumFiberLabels) {
  auto r = run("examples --name symplectic-sum");
  ASSERT_EQ(r.status, 0);
  auto c = io::decode_complex(json::parse(r.out));
  EXPECT_EQ(c.stratum("1").fiber, "M₁");
  EXPECT_EQ(c.stratum("2").fiber, "M₂");
  EXPECT_EQ(c.stratum("[1,2]").fiber, "ℂ*⋊N");
}

TEST_F(Cli, OutputIsDeterministic) {
  for (const std::string cmd : {"moduli --n 5 --as-complex -", "examples --name cp2-triangle", "explode --signature 1,2,1",
                                "moduli --n 5 --list", "examples --name r-n --dim 3"}) {
    auto a = run(cmd), b = run(cmd);
    EXPECT_EQ(a.status, 0) << cmd;
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_FALSE(a.out.empty());
  }
}

TEST_F(Cli, SeedIsRejected) {
  for (const std::string cmd : {"--seed 1 moduli --n 4", "moduli --n 4 --seed 1"}) {
    auto r = run(cmd);
    EXPECT_EQ(r.status, 2) << cmd;
    auto err = json::parse(r.err);
    EXPECT_EQ(err["kind"], "error");
    EXPECT_EQ(err["category"], "usage");
  }
}

TEST_F(Cli, FormatErrors) {
  auto doc = io::document("complex", io::encode(datasets::point()));
  doc["format"] = "exploded-kit/0";
  io::write_file(path("old.json"), doc.dump());
  auto r = run("validate " + path("old.json"));
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.err)["category"], "format");

  io::write_file(path("junk.json"), "{\"format\": ");
  EXPECT_EQ(run("validate " + path("junk.json")).status, 2);
  EXPECT_EQ(run("validate " + path("missing.json")).status, 2);
  EXPECT_EQ(run("no-such-command").status, 2);
  EXPECT_EQ(run("examples --name nothing").status, 2);
}

TEST_F(Cli, ValidationFailureIsExitOne) {
  auto c = datasets::quadrant();
  AffineComplex broken;
  for (const auto& s : c.strata()) broken.add_stratum(s);
  for (const auto& inc : c.inclusions())
    if (inc.source != "X") broken.add_inclusion(inc);
  write("broken.json", "complex", io::encode(broken));
  auto r = run("validate " + path("broken.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(json::parse(r.out)["ok"].get<bool>());

  // A subdivision over an invalid complex is refused before use.
  Subdivision s;
  s.coarse = broken;
  s.fine = broken;
  s.map = StratifiedMap::identity(broken);
  write("s.json", "subdivision", io::encode(s));
  write("e.json", "exploded-chart", io::encode(explode({0, 2, 0})));
  auto f = run("refine --complex " + path("e.json") + " --subdivision " + path("s.json"));
  EXPECT_EQ(f.status, 1);
  auto err = json::parse(f.err);
  EXPECT_EQ(err["category"], "validation");
  EXPECT_FALSE(err["report"]["diagnostics"].empty());
}

TEST_F(Cli, RefineProducesAValidChart) {
  auto e = explode({0, 2, 0});
  std::string top = explosion_stratum_id({0, 1});
  write("e.json", "exploded-chart", io::encode(e));
  write("s.json", "subdivision", io::encode(diagonal_split(e.base, top)));
  auto r = run("refine --complex " + path("e.json") + " --subdivision " + path("s.json") + " --out " + path("r.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  auto v = run("validate " + path("r.json"));
  EXPECT_EQ(v.status, 0) << v.out;
  auto refined = io::decode_refined_chart(io::read_file(path("r.json")));
  EXPECT_EQ(refined.chart.base.size(), 6u);

  write("c.json", "complex", io::encode(e.base));
  auto plain = run("refine --complex " + path("c.json") + " --subdivision " + path("s.json"));
  ASSERT_EQ(plain.status, 0) << plain.err;
  EXPECT_EQ(io::decode_subdivision(json::parse(plain.out)).fine.size(), 6u);
}

TEST_F(Cli, LiftOrWallCertificate) {
  auto q = datasets::quadrant();
  write("s.json", "subdivision", io::encode(diagonal_split(q, "Q")));
  write("ok.json", "map", io::encode(segment({1, 1}, {1, 2})));
  write("cross.json", "map", io::encode(segment({2, 1}, {-1, 1})));

  auto r = run("lift --map " + path("ok.json") + " --subdivision " + path("s.json") + " --out " + path("lift.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(run("validate " + path("lift.json")).status, 0);
  auto again = run("lift --map " + path("ok.json") + " --subdivision " + path("s.json"));
  EXPECT_EQ(again.out, slurp(path("lift.json")));

  auto w = run("lift --map " + path("cross.json") + " --subdivision " + path("s.json"));
  EXPECT_EQ(w.status, 1);
  auto cert = json::parse(w.out);
  EXPECT_EQ(cert["kind"], "wall-crossing");
  EXPECT_EQ(cert["source_stratum"], "e");
}

TEST_F(Cli, RealizeTriangleCurve) {
  ASSERT_EQ(run("examples --name tropical-curve --out " + path("g.json")).status, 0);
  auto r = run("realize --graph " + path("g.json") + " --anchor R=0,0");
  ASSERT_EQ(r.status, 0) << r.err;
  auto real = io::decode_realization(json::parse(r.out));
  EXPECT_EQ(real.positions.at("Q"), (RationalVector{1, 0}));
  EXPECT_EQ(real.positions.at("P"), (RationalVector{0, 1}));

  auto d = run("realize --graph " + path("g.json") + " --anchor R=1/2,0 --dot");
  EXPECT_NE(d.out.find("pos=\"1.5,0!\""), std::string::npos) << d.out;

  EXPECT_EQ(run("balance --graph " + path("g.json")).status, 0);
  EXPECT_EQ(run("realize --graph " + path("g.json") + " --anchor Z=0,0").status, 2);
}

TEST_F(Cli, RealizeDetectsCycleDefect) {
  auto g = datasets::triangle_curve();
  g.edges[0].length = EdgeLength::finite(2);
  write("g.json", "tropical-graph", io::encode(g));
  auto r = run("realize --graph " + path("g.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json::parse(r.out)["kind"], "cycle-defect");
}

TEST_F(Cli, UnknownLengthsAreSolved) {
  auto g = datasets::triangle_curve();
  g.edges[0].length = EdgeLength::unknown();
  write("g.json", "tropical-graph", io::encode(g));
  auto r = run("realize --graph " + path("g.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  auto sol = json::parse(r.out);
  EXPECT_EQ(sol["kind"], "unique");
  EXPECT_EQ(sol["lengths"]["RQ"], "1");
}

TEST_F(Cli, BalanceReportsDefects) {
  auto g = datasets::triangle_curve();
  g.edges[3].tail_momentum = {-1, 0};
  write("g.json", "tropical-graph", io::encode(g));
  auto r = run("balance --graph " + path("g.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json::parse(r.out)["defects"]["R"], json::parse(R"(["0","1"])"));
}

TEST_F(Cli, FiberProductWithUniversalCheck) {
  auto q = datasets::quadrant();
  io::MapBundle id{q, q, StratifiedMap::identity(q)};
  write("f.json", "map", io::encode(id));
  auto r = run("fiber-product --f " + path("f.json") + " --g " + path("f.json") + " --out " + path("fp.json"));
  ASSERT_EQ(r.status, 0) << r.err;
  auto fp = io::decode_fiber_product(io::read_file(path("fp.json")));
  EXPECT_EQ(fp.complex.size(), 4u);
  EXPECT_TRUE(fp.hypothesis_ok);
  EXPECT_EQ(run("validate " + path("fp.json")).status, 0);

  write("d.json", "universal-test",
        {{"complex", io::encode(q)}, {"p", io::encode(StratifiedMap::identity(q))}, {"q", io::encode(StratifiedMap::identity(q))}});
  auto u = run("fiber-product --f " + path("f.json") + " --g " + path("f.json") + " --check-universal " + path("d.json"));
  ASSERT_EQ(u.status, 0) << u.err;
  EXPECT_TRUE(json::parse(u.out)["ok"].get<bool>());
}

TEST_F(Cli, DotOutput) {
  ASSERT_EQ(run("examples --name point --out " + path("pt.json")).status, 0);
  auto d = run("dot " + path("pt.json"));
  ASSERT_EQ(d.status, 0);
  EXPECT_EQ(std::count(d.out.begin(), d.out.end(), ';'), 2);  // rankdir + one node
  ASSERT_EQ(run("examples --name tropical-curve --out " + path("g.json")).status, 0);
  EXPECT_EQ(run("dot " + path("g.json")).status, 0);
  write("w.json", "wall-crossing", io::encode(WallCrossing{}));
  EXPECT_EQ(run("dot " + path("w.json")).status, 2);
}

TEST_F(Cli, ExplodeTable) {
  auto r = run("explode --signature 0,2,1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);  // header + 4 strata
  EXPECT_NE(r.out.find("(2,0,1)"), std::string::npos);
  EXPECT_EQ(run("explode --signature 1,2").status, 2);
}

}  // namespace
