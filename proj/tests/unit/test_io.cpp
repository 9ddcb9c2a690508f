#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "copoly/error.hpp"
#include "copoly/families.hpp"
#include "copoly/io.hpp"
#include "copoly/polytope.hpp"

using namespace copoly;

namespace {

void check_same(const HRep& a, const HRep& b) {
  REQUIRE(a.dim == b.dim);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a.labels[i] == b.labels[i]);
    CHECK(a.constraints[i].kind == b.constraints[i].kind);
    CHECK(a.constraints[i].coeffs == b.constraints[i].coeffs);
    CHECK(a.constraints[i].rhs == b.constraints[i].rhs);
  }
}

HRep mixed() {
  HRep h(3);
  h.add({1, rat_normalize(-2, 3), 0}, Kind::LE, rat_normalize(5, 7), "a");
  h.add({0, 1, 1}, Kind::GE, -1, "b");
  h.add({1, 1, 1}, Kind::EQ, 1, "sum");
  h.add({0, 0, 1}, Kind::LE, 2, "upper z");
  return h;
}

}  // namespace

TEST_CASE("cdd round trip") {
  for (const HRep& h : {mixed(), build(FamilySpec::parse("udc:3x3:grid")), build(FamilySpec::parse("dq:3x4:density"))}) {
    std::stringstream ss;
    write_hrep_cdd(ss, h);
    check_same(read_hrep_cdd(ss), h);
  }
  VRep v = enumerate_vertices(build(FamilySpec::parse("cdq:3x3:density")));
  std::stringstream ss;
  write_vrep_cdd(ss, v);
  VRep w = read_vrep_cdd(ss);
  CHECK(w.dim == v.dim);
  CHECK(w.vertices == v.vertices);
}

TEST_CASE("json round trip") {
  HRep h = mixed();
  check_same(hrep_from_json(to_json(h)), h);
  check_same(hrep_from_json(nlohmann::json::parse(to_json(h).dump())), h);
  CHECK(to_json(h)["constraints"][0]["coeffs"][1] == "-2/3");
  VRep v = enumerate_vertices(build(FamilySpec::parse("udc:2x3:grid")));
  CHECK(vrep_from_json(to_json(v)).vertices == v.vertices);
  RatMatrix m(2, 3);
  m(0, 1) = rat_normalize(1, 3);
  m(1, 2) = -4;
  CHECK(matrix_from_json(to_json(m)) == m);
  CHECK(matrix_from_json(nlohmann::json::parse(R"([["0","1/2"],[3,"1"]])"))(0, 1) == rat_normalize(1, 2));
}

TEST_CASE("plain cdd without annotations") {
  // x >= 0, y >= 0, x + y <= 1, written as b - A x >= 0
  std::istringstream is(
      "H-representation\n"
      "begin\n"
      " 3 3 rational\n"
      " 0 1 0\n"
      " 0 0 1\n"
      " 1 -1 -1\n"
      "end\n");
  HRep h = read_hrep_cdd(is);
  CHECK(h.dim == 2);
  CHECK(enumerate_vertices(h).vertices.size() == 3);
  CHECK(contains(h, {rat_normalize(1, 3), rat_normalize(1, 3)}).inside);
  CHECK_FALSE(contains(h, {1, 1}).inside);

  std::istringstream lin(
      "H-representation\n"
      "linearity 1 1\n"
      "begin\n"
      " 3 3 integer\n"
      " 1 -1 -1\n"
      " 0 1 0\n"
      " 0 0 1\n"
      "end\n");
  HRep e = read_hrep_cdd(lin);
  CHECK(e.equality_count() == 1);
  CHECK(enumerate_vertices(e).vertices.size() == 2);
}

TEST_CASE("format detection and errors") {
  std::stringstream js(to_json(mixed()).dump());
  check_same(read_hrep(js), mixed());
  std::stringstream cdd;
  write_hrep_cdd(cdd, mixed());
  check_same(read_hrep(cdd), mixed());

  std::istringstream truncated("H-representation\nbegin\n 2 3 rational\n 1 0 0\n");
  CHECK_THROWS_AS(read_hrep_cdd(truncated), ParseError);
  std::istringstream wrong_width("H-representation\nbegin\n 1 3 rational\n 1 0\nend\n");
  CHECK_THROWS_AS(read_hrep_cdd(wrong_width), ParseError);
  std::istringstream real("H-representation\nbegin\n 1 2 real\n 1 0.5\nend\n");
  CHECK_THROWS_AS(read_hrep_cdd(real), ParseError);
  std::istringstream ray("V-representation\nbegin\n 1 3 rational\n 0 1 0\nend\n");
  CHECK_THROWS_AS(read_vrep_cdd(ray), ParseError);
  std::istringstream vfile("V-representation\nbegin\n 1 3 rational\n 1 1 0\nend\n");
  CHECK_THROWS_AS(read_hrep_cdd(vfile), ParseError);
  CHECK_THROWS_AS(hrep_from_json(nlohmann::json{{"dim", 2}}), ParseError);
  CHECK_THROWS_AS(hrep_from_json(nlohmann::json::parse(
                      R"({"dim":1,"constraints":[{"kind":"LT","coeffs":["1"],"rhs":"0"}]})")),
                  ParseError);
  std::istringstream garbage("{not json");
  CHECK_THROWS_AS(read_hrep(garbage), ParseError);
}
