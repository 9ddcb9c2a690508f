#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "copoly/copula_ops.hpp"
#include "copoly/error.hpp"
#include "copoly/families.hpp"
#include "copoly/polytope.hpp"
#include "copoly/transforms.hpp"

using namespace copoly;

namespace {

Rational fr(long n, long d) { return rat_normalize(n, d); }

std::vector<GridMatrix> grid_vertices(const std::string& spec) {
  FamilySpec s = FamilySpec::parse(spec);
  std::vector<GridMatrix> out;
  for (const auto& v : enumerate_vertices(build(s)).vertices) out.push_back(GridMatrix::from_point(s.p, s.q, v));
  return out;
}

GridMatrix random_point(const std::string& spec, std::mt19937_64& rng) {
  FamilySpec s = FamilySpec::parse(spec);
  static std::map<std::string, VRep> cache;
  auto it = cache.find(spec);
  if (it == cache.end()) it = cache.emplace(spec, enumerate_vertices(build(s))).first;
  return GridMatrix::from_point(s.p, s.q, random_convex_combination(it->second, rng));
}

// The ASM_3 pattern [[0,1,0],[1,-1,1],[0,1,0]] as a cumulative grid.
GridMatrix asm_center() {
  RatVec x{0, 3, 0, 3, -3, 3, 0, 3, 0};
  return apply_T_inv(DensityMatrix::from_point(3, 3, x));
}

// Bilinear patch of cell (i, j), written out directly.
Rational patch(const GridMatrix& g, size_t i, size_t j, const Rational& u, const Rational& v) {
  Rational lu = u * Rational(static_cast<long>(g.p)) - Rational(static_cast<long>(i));
  Rational mv = v * Rational(static_cast<long>(g.q)) - Rational(static_cast<long>(j));
  return (1 - lu) * (1 - mv) * g.c(i, j) + (1 - lu) * mv * g.c(i, j + 1) + lu * (1 - mv) * g.c(i + 1, j) +
         lu * mv * g.c(i + 1, j + 1);
}

// Midpoint rule with n subcells per grid cell side; exact for bilinear patches.
Rational rho_by_quadrature(const GridMatrix& g, size_t n) {
  const long np = static_cast<long>(g.p * n), nq = static_cast<long>(g.q * n);
  mpq_class sum = 0;
  for (long a = 0; a < np; ++a)
    for (long b = 0; b < nq; ++b) {
      Rational u = fr(2 * a + 1, 2 * np), v = fr(2 * b + 1, 2 * nq);
      sum += patch(g, static_cast<size_t>(a) / n, static_cast<size_t>(b) / n, u, v).mpq();
    }
  Rational integral = Rational(mpq_class(sum)) / Rational(np * nq);
  return Rational(12) * integral - Rational(3);
}

}  // namespace

TEST_CASE("named restrictions") {
  GridMatrix m = restriction(Named::M, 2, 3), w = restriction(Named::W, 2, 3), pi = restriction(Named::Pi, 2, 3);
  CHECK(m.c(1, 1) == fr(1, 3));
  CHECK(m.c(1, 2) == fr(1, 2));
  CHECK(w.c(1, 1) == 0);
  CHECK(w.c(1, 2) == fr(1, 6));
  CHECK(pi.c(1, 2) == fr(1, 3));
  CHECK(m.c(2, 3) == 1);
}

TEST_CASE("discrete copula predicate") {
  CHECK(is_discrete_copula(restriction(Named::Pi, 3, 4)));
  CHECK(is_discrete_copula(restriction(Named::W, 4, 4)));
  CHECK(is_discrete_copula(restriction(Named::M, 3, 5)));
  auto r = is_discrete_copula(asm_center());
  CHECK_FALSE(r);
  CHECK_FALSE(r.violations.empty());
  CHECK(is_quasi(asm_center()));
  GridMatrix bad = restriction(Named::Pi, 2, 2);
  bad.c(2, 1) = fr(1, 3);
  CHECK_FALSE(is_discrete_copula(bad));
}

TEST_CASE("ultramodular predicate") {
  CHECK(is_ultramodular(restriction(Named::Pi, 3, 3)));
  CHECK(is_ultramodular(restriction(Named::W, 3, 3)));
  auto r = is_ultramodular(restriction(Named::M, 3, 3));
  CHECK_FALSE(r);
  CHECK_FALSE(r.violations.empty());
  for (const auto& g : grid_vertices("udc:3x3:grid")) CHECK(is_convex_quasi(g));
}

TEST_CASE("quasi predicates on random copulas") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    GridMatrix g = random_point("dc:4x4:grid", rng);
    CHECK(is_discrete_copula(g));
    CHECK(is_quasi(g));
  }
  // M has concave sections
  CHECK(is_quasi(restriction(Named::M, 3, 3)));
  CHECK_FALSE(is_convex_quasi(restriction(Named::M, 3, 3)));
}

TEST_CASE("checkerboard evaluation") {
  GridMatrix pi = restriction(Named::Pi, 3, 4);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    Rational u = fr(static_cast<long>(rng() % 101), 100), v = fr(static_cast<long>(rng() % 37), 36);
    CHECK(checkerboard_eval(pi, {u, v}) == u * v);
  }
  GridMatrix g = random_point("udc:3x4:grid", rng);
  for (size_t i = 0; i <= 3; ++i)
    for (size_t j = 0; j <= 4; ++j)
      CHECK(checkerboard_eval(g, {fr(static_cast<long>(i), 3), fr(static_cast<long>(j), 4)}) == g.c(i, j));
  CHECK(checkerboard_eval(restriction(Named::W, 2, 2), {fr(1, 2), fr(1, 2)}) == 0);
  CHECK_THROWS_AS(checkerboard_eval(pi, {fr(-1, 5), fr(1, 2)}), OutOfRange);
  CHECK_THROWS_AS(checkerboard_eval(pi, {fr(1, 2), fr(6, 5)}), OutOfRange);
}

TEST_CASE("extension is continuous across cell edges") {
  std::mt19937_64 rng(9);
  GridMatrix g = random_point("dq:3x4:grid", rng);
  for (int k = 0; k < 1000; ++k) {
    bool vertical = rng() % 2;
    if (vertical) {
      size_t i = 1 + rng() % 2, j = rng() % 4;
      Rational u = fr(static_cast<long>(i), 3);
      Rational v = fr(static_cast<long>(j), 4) + fr(static_cast<long>(rng() % 1000), 4000);
      Rational left = patch(g, i - 1, j, u, v), right = patch(g, i, j, u, v);
      CHECK(left == right);
      CHECK(checkerboard_eval(g, {u, v}) == right);
    } else {
      size_t i = rng() % 3, j = 1 + rng() % 3;
      Rational v = fr(static_cast<long>(j), 4);
      Rational u = fr(static_cast<long>(i), 3) + fr(static_cast<long>(rng() % 1000), 3000);
      Rational low = patch(g, i, j - 1, u, v), high = patch(g, i, j, u, v);
      CHECK(low == high);
      CHECK(checkerboard_eval(g, {u, v}) == high);
    }
  }
}

TEST_CASE("extension keeps copula boundary values") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 20; ++k) {
    GridMatrix g = random_point("dc:3x4:grid", rng);
    Rational t = fr(static_cast<long>(rng() % 97), 96);
    CHECK(checkerboard_eval(g, {0, t}) == 0);
    CHECK(checkerboard_eval(g, {t, 0}) == 0);
    CHECK(checkerboard_eval(g, {1, t}) == t);
    CHECK(checkerboard_eval(g, {t, 1}) == t);
  }
}

TEST_CASE("ultramodular extension") {
  for (const auto& g : grid_vertices("udc:3x3:grid"))
    for (size_t r : {1, 2, 4}) CHECK(verify_extension_ultramodular(g, r));
  std::mt19937_64 rng(17);
  for (int k = 0; k < 5; ++k) CHECK(verify_extension_ultramodular(random_point("udc:4x4:grid", rng), 2));
  CHECK(verify_extension_ultramodular(random_point("udc:2x5:grid", rng), 3));
  CHECK_THROWS_AS(verify_extension_ultramodular(restriction(Named::M, 3, 3), 2), PreconditionFailed);
  CHECK_THROWS_AS(verify_extension_ultramodular(restriction(Named::Pi, 3, 3), 0), InvalidArgument);
}

TEST_CASE("quasi extension") {
  for (const auto& g : grid_vertices("cdq:3x3:grid")) CHECK(verify_extension_quasi(g, 2));
  CHECK(verify_extension_quasi(restriction(Named::Pi, 3, 3), 2));
  // a DC_3 vertex outside CDQ_3
  bool found = false;
  for (const auto& g : grid_vertices("dc:3x3:grid")) {
    if (is_convex_quasi(g)) continue;
    found = true;
    CHECK_THROWS_AS(verify_extension_quasi(g, 1), PreconditionFailed);
    break;
  }
  CHECK(found);
}

TEST_CASE("spearman rho examples") {
  CHECK(spearman_rho(restriction(Named::Pi, 3, 4)) == 0);
  CHECK(spearman_rho(restriction(Named::M, 2, 2)) == fr(3, 4));
  CHECK(spearman_rho(restriction(Named::M, 2, 2)) == rho_by_quadrature(restriction(Named::M, 2, 2), 512));
  Rational prev = 0;
  for (size_t p = 2; p <= 6; ++p) {
    Rational r = spearman_rho(restriction(Named::W, p, p));
    CAPTURE(p);
    CHECK(r == rho_by_quadrature(restriction(Named::W, p, p), 8));
    CHECK(r < prev);
    CHECK(r > -1);
    prev = r;
  }
  CHECK(spearman_rho(asm_center()) == rho_by_quadrature(asm_center(), 4));
  GridMatrix bad = restriction(Named::Pi, 2, 2);
  bad.c(1, 1) = 2;
  CHECK_THROWS_AS(spearman_rho(bad), PreconditionFailed);
}

TEST_CASE("spearman rho is affine and transpose invariant") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    GridMatrix a = random_point("dc:3x4:grid", rng), b = random_point("dc:3x4:grid", rng);
    Rational t = fr(static_cast<long>(rng() % 11), 10);
    GridMatrix mix(3, 4);
    for (size_t i = 0; i <= 3; ++i)
      for (size_t j = 0; j <= 4; ++j) mix.c(i, j) = t * a.c(i, j) + (1 - t) * b.c(i, j);
    CHECK(spearman_rho(mix) == t * spearman_rho(a) + (1 - t) * spearman_rho(b));
    CHECK(spearman_rho(transpose_point(a)) == spearman_rho(a));
  }
}
