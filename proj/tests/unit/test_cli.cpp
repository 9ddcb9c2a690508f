#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "copoly/cli.hpp"
#include "copoly/families.hpp"
#include "copoly/io.hpp"
#include "copoly/polytope.hpp"

using namespace copoly;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "copoly_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  auto pos = t.rfind('\n');
  return pos == std::string::npos ? t : t.substr(pos + 1);
}

}  // namespace

TEST_CASE("basic verbs") {
  Run v = run({"vertices", "udc:3x3:density"});
  CHECK(v.code == 0);
  CHECK(last_line(v.out) == "7");
  CHECK(v.out.find("V-representation") != std::string::npos);
  Run m = run({"minimal", "dq:3x4:density"});
  CHECK(m.code == 0);
  CHECK(m.out == "16 facets\n");
  Run t = run({"tau-det", "3", "4"});
  CHECK(t.code == 0);
  CHECK(t.out == "-4\n");
}

TEST_CASE("family file round trip") {
  for (const char* fmt : {"cdd", "json"}) {
    fs::path f = scratch(std::string("udc34.") + fmt);
    Run w = run({"family", "udc:3x4:density", "--format", fmt, "-o", f.string()});
    REQUIRE(w.code == 0);
    fs::path e = scratch(std::string("udc34_v.") + fmt);
    Run v = run({"vertices", f.string(), "-o", e.string()});
    CHECK(v.code == 0);
    CHECK(v.out == "52\n");
    std::ifstream is(e);
    VRep read = read_vrep(is);
    auto expect = enumerate_vertices(build(FamilySpec::parse("udc:3x4:density"))).vertices;
    CHECK(std::set<RatVec>(read.vertices.begin(), read.vertices.end()) ==
          std::set<RatVec>(expect.begin(), expect.end()));
  }
  Run j = run({"family", "cdq:3x3", "--format", "json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["dim"] == 16);
}

TEST_CASE("membership and vertex tests") {
  CHECK(run({"member", "udc:3x3:grid", "--grid", "w:3x3"}).code == 0);
  Run out = run({"member", "udc:3x3:grid", "--grid", "min:3x3"});
  CHECK(out.code == 1);
  CHECK(out.out == "outside\n");
  CHECK(out.err.find("violates") != std::string::npos);
  CHECK(run({"is-vertex", "udc:3x3:density", "--grid", "pi:3x3"}).out == "vertex\n");
  Run nv = run({"is-vertex", "birkhoff:3", "--point", "1,1,1,1,1,1,1,1,1"});
  CHECK(nv.code == 1);
  CHECK(nv.out == "not a vertex\n");
  CHECK(run({"is-vertex", "birkhoff:3", "--point", "3,0,0,0,3,0,0,0,3"}).code == 0);
  CHECK(run({"member", "birkhoff:3", "--point", "1,2"}).code == 1);
  CHECK(run({"member", "birkhoff:3"}).code == 2);
}

TEST_CASE("extension and rho") {
  CHECK(run({"extend", "--grid", "w:2x2", "--at", "1/2,1/2"}).out == "0\n");
  CHECK(run({"extend", "--grid", "pi:2x2", "--at", "1/3,1/2"}).out == "1/6\n");
  CHECK(run({"extend", "--grid", "0,0,0;0,1/4,1/2;0,1/2,1", "--at", "1/2,1"}).out == "1/2\n");
  Run v = run({"extend", "--verify", "udc:2x3", "--samples", "3", "--refinement", "2"});
  CHECK(v.code == 0);
  CHECK(v.out.find("passed") != std::string::npos);
  CHECK(run({"extend", "--verify", "cdq:2x2", "--samples", "2", "--seed", "5"}).code == 0);
  CHECK(run({"extend", "--grid", "pi:2x2", "--at", "2,0"}).code == 1);
  CHECK(run({"extend", "--grid", "pi:2x2"}).code == 2);
  CHECK(run({"rho", "--grid", "pi:3x3"}).out == "0\n");
  CHECK(run({"rho", "--grid", "min:2x2"}).out == "3/4\n");
  CHECK(run({"rho", "--grid", "w:4x4"}).out == "-15/16\n");

  fs::path f = scratch("grid.json");
  std::ofstream(f) << R"([["0","0","0"],["0","1/4","1/2"],["0","1/2","1"]])";
  CHECK(run({"rho", "--grid", f.string()}).out == "0\n");
}

TEST_CASE("maxent output") {
  Run r = run({"maxent", "birkhoff:3", "--rho", "0.5"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  double sum = 0;
  for (const auto& row : j["density"])
    for (const auto& x : row) sum += x.get<double>();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["entropy"].get<double>() < std::log(9.0));
  CHECK(r.out.find("e-01") != std::string::npos);
  CHECK(run({"maxent", "birkhoff:3", "--rho", "1"}).code == 1);
  CHECK(run({"maxent", "nope:3"}).code == 2);
}

TEST_CASE("census output") {
  fs::path f = scratch("census.csv");
  Run r = run({"census", "--family", "cdq", "--p-max", "3", "-o", f.string()});
  CHECK(r.code == 0);
  std::ifstream is(f);
  std::stringstream ss;
  ss << is.rdbuf();
  CHECK(ss.str() == "p,family,total,decomposable,indecomposable\n1,cdq,1,0,1\n2,cdq,2,1,1\n3,cdq,7,3,4\n");
  Run g = run({"census", "--family", "udc", "--p-max", "3", "--gf-degree", "3"});
  CHECK(g.code == 1);
  CHECK(g.out.find("V = 1/(1 - ID): holds") != std::string::npos);
  CHECK(run({"census", "--p-max", "6"}).code == 2);
  CHECK(run({"census", "--p-max", "2", "--gf-degree", "3"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"vertices", "xyz:3x3"}).code == 2);
  CHECK(run({"vertices", "udc"}).code == 2);
  CHECK(run({"rho", "--grid", "1,2;3"}).code == 2);
  CHECK(run({"rho", "--grid", "min:2x2", "--bogus"}).code == 2);
  CHECK(run({"family", "udc:3x3", "--format", "xml"}).code == 2);
  CHECK(run({"tau-det", "3"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
