#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "copoly/error.hpp"
#include "copoly/families.hpp"
#include "copoly/lp.hpp"
#include "copoly/matrix.hpp"
#include "copoly/rational.hpp"
#include "oracles.hpp"

using namespace copoly;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

// Reference fraction on machine integers.
struct Frac {
  __int128 n, d;
  Frac(__int128 n_, __int128 d_) : n(n_), d(d_) {
    if (d < 0) n = -n, d = -d;
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) a %= b, std::swap(a, b);
    if (a) n /= a, d /= a;
  }
};

bool same(const Rational& r, const Frac& f) {
  return r.num() == mpz_class(static_cast<long>(f.n)) && r.den() == mpz_class(static_cast<long>(f.d));
}

RatMatrix random_matrix(std::mt19937_64& rng, size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m(i, j) = rat_normalize(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 5) + 1);
  return m;
}

std::vector<oracle::Vec> rows_of(const RatMatrix& m) {
  std::vector<oracle::Vec> out;
  for (size_t i = 0; i < m.rows(); ++i) out.push_back(oracle::to_q(m.row(i)));
  return out;
}

}  // namespace

TEST_CASE("rat_normalize canonicalizes") {
  CHECK(rat_normalize(2, 4) == R("1/2"));
  CHECK(rat_normalize(0, 7).str() == "0");
  CHECK(rat_normalize(0, 7).den() == 1);
  CHECK(rat_normalize(3, -6).str() == "-1/2");
  CHECK_THROWS_AS(rat_normalize(1, 0), ZeroDenominator);
  CHECK_THROWS_AS(R("1/0"), ZeroDenominator);
}

TEST_CASE("parse and print") {
  CHECK(R("-3/7").str() == "-3/7");
  CHECK(R("10/2").str() == "5");
  CHECK(R("4/-6").str() == "-2/3");
  CHECK_THROWS_AS(R("abc"), ParseError);
  CHECK_THROWS_AS(R(""), ParseError);
}

TEST_CASE("arithmetic agrees with a machine-integer reference") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 2000; ++k) {
    long a = static_cast<long>(rng() % 2001) - 1000, b = static_cast<long>(rng() % 999) + 1;
    long c = static_cast<long>(rng() % 2001) - 1000, d = static_cast<long>(rng() % 999) + 1;
    Rational x = rat_normalize(a, b), y = rat_normalize(c, d);
    CHECK(same(x + y, Frac(__int128(a) * d + __int128(c) * b, __int128(b) * d)));
    CHECK(same(x - y, Frac(__int128(a) * d - __int128(c) * b, __int128(b) * d)));
    CHECK(same(x * y, Frac(__int128(a) * c, __int128(b) * d)));
    if (c != 0) CHECK(same(x / y, Frac(__int128(a) * d, __int128(b) * c)));
    CHECK((x < y) == (__int128(a) * d < __int128(c) * b));
  }
}

TEST_CASE("field axioms on random rationals") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    auto pick = [&] { return rat_normalize(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 50) + 1); };
    Rational a = pick(), b = pick(), c = pick();
    CHECK(a + (b + c) == (a + b) + c);
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
  }
  CHECK_THROWS_AS(Rational(1) / Rational(0), ZeroDenominator);
}

TEST_CASE("rationalize") {
  CHECK(rationalize(0.5, 1000) == R("1/2"));
  CHECK(rationalize(1.0 / 3.0, 1000) == R("1/3"));
  CHECK(rationalize(3.14159265358979, 1000) == R("355/113"));
  CHECK(rationalize(-0.2, 1000000000) == R("-1/5"));
}

TEST_CASE("det examples") {
  CHECK(det(RatMatrix::identity(3)) == Rational(1));
  CHECK(det(RatMatrix::from_rows({{0, 1}, {1, 0}})) == Rational(-1));
  CHECK(det(RatMatrix(0, 0)) == Rational(1));
  CHECK(det(RatMatrix::from_rows({{1, 2}, {2, 4}})) == Rational(0));
  CHECK_THROWS_AS(det(RatMatrix(2, 3)), NotSquare);
}

TEST_CASE("det matches cofactor expansion and is multiplicative") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 40; ++k) {
    RatMatrix a = random_matrix(rng, 5);
    CHECK(det(a).mpq() == oracle::det_cofactor(rows_of(a)));
    RatMatrix x = random_matrix(rng, 4), y = random_matrix(rng, 4);
    CHECK(det(x * y) == det(x) * det(y));
  }
}

TEST_CASE("rank examples and agreement with Gauss-Jordan") {
  CHECK(rank(RatMatrix(2, 3)) == 0);
  CHECK(rank(RatMatrix::identity(4)) == 4);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 40; ++k) {
    RatMatrix a = random_matrix(rng, 5);
    // force dependence in half the cases
    if (k % 2)
      for (size_t j = 0; j < 5; ++j) a(4, j) = a(0, j) * Rational(2) - a(1, j);
    CHECK(rank(a) == oracle::rank(rows_of(a)));
  }
}

TEST_CASE("solve_affine") {
  AffineParam p = solve_affine({{1, 1, 0}, {0, 1, 1}}, {Rational(1), Rational(2)}, 3);
  REQUIRE(p.consistent);
  CHECK(p.free_dim() == 1);
  for (long t : {-3L, 0L, 5L}) {
    RatVec x = p.lift({Rational(t)});
    CHECK(x[0] + x[1] == Rational(1));
    CHECK(x[1] + x[2] == Rational(2));
  }
  CHECK_FALSE(solve_affine({{1, 1}, {2, 2}}, {Rational(1), Rational(3)}, 2).consistent);
}

TEST_CASE("lp_solve examples") {
  HRep unit(1);
  unit.add({Rational(1)}, Kind::GE, 0, "lo");
  unit.add({Rational(1)}, Kind::LE, 1, "hi");
  LpResult r = lp_solve({Rational(1)}, unit, Sense::Max);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rational(1));
  CHECK(r.point == RatVec{Rational(1)});

  HRep bad(1);
  bad.add({Rational(1)}, Kind::GE, 0, "a");
  bad.add({Rational(1)}, Kind::GE, 1, "b");
  bad.add({Rational(-1)}, Kind::GE, 0, "c");
  CHECK(lp_solve({Rational(1)}, bad, Sense::Max).status == LpStatus::Infeasible);

  HRep ray(1);
  ray.add({Rational(1)}, Kind::GE, 0, "a");
  CHECK(lp_solve({Rational(1)}, ray, Sense::Max).status == LpStatus::Unbounded);
  CHECK_THROWS_AS(lp_solve({Rational(1), Rational(0)}, unit, Sense::Max), DimensionMismatch);

  // interior value c_11 of the 2 x 2 ultramodular grid
  HRep udc = build_udc(2, 2, Space::GRID, Form::DEFINING);
  RatVec obj(udc.dim);
  obj[grid_index(2, 1, 1)] = Rational(1);
  LpResult u = lp_solve(obj, udc, Sense::Max);
  REQUIRE(u.status == LpStatus::Optimal);
  CHECK(u.value == R("1/4"));
  CHECK(lp_solve(obj, udc, Sense::Min).value == Rational(0));
}

TEST_CASE("lp_solve agrees with brute-force vertex maximization") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 60; ++trial) {
    const size_t n = 2 + trial % 2;
    HRep h(n);
    for (size_t j = 0; j < n; ++j) {
      RatVec e(n);
      e[j] = Rational(1);
      h.add(e, Kind::GE, Rational(-5), "lo");
      h.add(e, Kind::LE, Rational(5), "hi");
    }
    for (int k = 0; k < 4; ++k) {
      RatVec a(n);
      for (auto& x : a) x = Rational(static_cast<long>(rng() % 7) - 3);
      if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); })) a[0] = Rational(1);
      h.add(a, Kind::LE, Rational(static_cast<long>(rng() % 9) - 2), "cut");
    }
    if (trial % 3 == 0) {
      RatVec a(n);
      a[0] = Rational(1);
      a[1] = Rational(-1);
      h.add(a, Kind::EQ, Rational(static_cast<long>(rng() % 3)), "eq");
    }
    RatVec obj(n);
    for (auto& x : obj) x = Rational(static_cast<long>(rng() % 11) - 5);
    auto value = [&](const oracle::Vec& v) {
      oracle::Q s = 0;
      for (size_t j = 0; j < n; ++j) s += obj[j].mpq() * v[j];
      return s;
    };
    auto verts = oracle::brute_vertices(h);
    LpResult mx = lp_solve(obj, h, Sense::Max), mn = lp_solve(obj, h, Sense::Min);
    if (verts.empty()) {
      CHECK(mx.status == LpStatus::Infeasible);
      continue;
    }
    REQUIRE(mx.status == LpStatus::Optimal);
    REQUIRE(mn.status == LpStatus::Optimal);
    oracle::Q best = value(verts[0]), worst = best;
    for (const auto& v : verts) {
      oracle::Q val = value(v);
      best = std::max(best, val);
      worst = std::min(worst, val);
    }
    CHECK(mx.value.mpq() == best);
    CHECK(mn.value.mpq() == worst);
    CHECK(oracle::feasible(h, oracle::to_q(mx.point)));
    RatVec neg = obj;
    for (auto& x : neg) x = -x;
    CHECK(lp_solve(neg, h, Sense::Min).value == -mx.value);
  }
}
