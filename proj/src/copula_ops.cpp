#include "copoly/copula_ops.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "copoly/error.hpp"
#include "copoly/families.hpp"

namespace copoly {

namespace {

// Constructed systems are reused across calls; minimal forms for small
// grids come from LP certification and are not free.
const HRep& cached(Family f, size_t p, size_t q, Form form) {
  static std::mutex mu;
  static std::map<std::tuple<Family, size_t, size_t, Form>, HRep> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(f, p, q, form);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FamilySpec s;
  s.family = f;
  s.p = p;
  s.q = q;
  s.space = Space::GRID;
  s.form = form;
  return cache.emplace(key, build(s)).first->second;
}

CheckResult check(const HRep& h, const GridMatrix& g) {
  Membership m = contains(h, g.point());
  return CheckResult{m.inside, std::move(m.violated)};
}

Rational frac(size_t a, size_t b) { return rat_normalize(static_cast<long>(a), static_cast<long>(b)); }

// Values of the extension along sections on the refined grid; t[k] = k/n.
struct Refined {
  const GridMatrix& g;
  size_t nu, nv;
  std::vector<std::vector<Rational>> val;  // val[a][b] = C(a/nu, b/nv)

  Refined(const GridMatrix& g, size_t r) : g(g), nu(g.p * r), nv(g.q * r), val(nu + 1, std::vector<Rational>(nv + 1)) {
    for (size_t a = 0; a <= nu; ++a)
      for (size_t b = 0; b <= nv; ++b) val[a][b] = checkerboard_eval(g, {frac(a, nu), frac(b, nv)});
  }

  bool sections_convex() const {
    const Rational half = frac(1, 2);
    for (size_t b = 0; b <= nv; ++b)
      for (size_t a1 = 0; a1 <= nu; ++a1)
        for (size_t a2 = a1 + 2; a2 <= nu; ++a2) {
          Rational mid = checkerboard_eval(g, {frac(a1 + a2, 2 * nu), frac(b, nv)});
          if (mid > half * (val[a1][b] + val[a2][b])) return false;
        }
    for (size_t a = 0; a <= nu; ++a)
      for (size_t b1 = 0; b1 <= nv; ++b1)
        for (size_t b2 = b1 + 2; b2 <= nv; ++b2) {
          Rational mid = checkerboard_eval(g, {frac(a, nu), frac(b1 + b2, 2 * nv)});
          if (mid > half * (val[a][b1] + val[a][b2])) return false;
        }
    return true;
  }
};

}  // namespace

GridMatrix restriction(Named c, size_t p, size_t q) {
  if (p == 0 || q == 0) throw InvalidArgument("grid sizes must be positive");
  GridMatrix g(p, q);
  for (size_t i = 0; i <= p; ++i)
    for (size_t j = 0; j <= q; ++j) {
      Rational u = frac(i, p), v = frac(j, q);
      switch (c) {
        case Named::Pi: g.c(i, j) = u * v; break;
        case Named::M: g.c(i, j) = std::min(u, v); break;
        case Named::W: g.c(i, j) = std::max(Rational(0), u + v - Rational(1)); break;
      }
    }
  return g;
}

CheckResult is_discrete_copula(const GridMatrix& g) { return check(cached(Family::DC, g.p, g.q, Form::DEFINING), g); }

CheckResult is_ultramodular(const GridMatrix& g) { return check(cached(Family::UDC, g.p, g.q, Form::MINIMAL), g); }

CheckResult is_quasi(const GridMatrix& g) { return check(cached(Family::DQ, g.p, g.q, Form::DEFINING), g); }

CheckResult is_convex_quasi(const GridMatrix& g) { return check(cached(Family::CDQ, g.p, g.q, Form::DEFINING), g); }

Rational checkerboard_eval(const GridMatrix& g, const ExtensionQuery& query) {
  const Rational one(1);
  if (query.u < 0 || query.u > one || query.v < 0 || query.v > one)
    throw OutOfRange("query (" + query.u.str() + ", " + query.v.str() + ") outside the unit square");
  auto locate = [](const Rational& t, size_t n, size_t& cell, Rational& lambda) {
    Rational s = t * Rational(static_cast<long>(n));
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), s.num().get_mpz_t(), s.den().get_mpz_t());
    cell = std::min<size_t>(fl.get_ui(), n - 1);
    lambda = s - Rational(static_cast<long>(cell));
  };
  size_t i, j;
  Rational lu, mv;
  locate(query.u, g.p, i, lu);
  locate(query.v, g.q, j, mv);
  const Rational one_lu = one - lu, one_mv = one - mv;
  return one_lu * one_mv * g.c(i, j) + one_lu * mv * g.c(i, j + 1) + lu * one_mv * g.c(i + 1, j) +
         lu * mv * g.c(i + 1, j + 1);
}

bool verify_extension_ultramodular(const GridMatrix& g, size_t refinement) {
  if (refinement == 0) throw InvalidArgument("refinement must be positive");
  CheckResult pre = is_ultramodular(g);
  if (!pre) throw PreconditionFailed("grid is not ultramodular: violates " + pre.violations.front());
  return Refined(g, refinement).sections_convex();
}

bool verify_extension_quasi(const GridMatrix& g, size_t refinement) {
  if (refinement == 0) throw InvalidArgument("refinement must be positive");
  CheckResult pre = is_convex_quasi(g);
  if (!pre) throw PreconditionFailed("grid is not a convex discrete quasi-copula: violates " + pre.violations.front());
  Refined r(g, refinement);
  const size_t nu = r.nu, nv = r.nv;
  // (C1) on the refined boundary
  for (size_t a = 0; a <= nu; ++a)
    if (!r.val[a][0].is_zero() || r.val[a][nv] != frac(a, nu)) return false;
  for (size_t b = 0; b <= nv; ++b)
    if (!r.val[0][b].is_zero() || r.val[nu][b] != frac(b, nv)) return false;
  // componentwise monotone
  for (size_t a = 0; a <= nu; ++a)
    for (size_t b = 0; b <= nv; ++b) {
      if (a + 1 <= nu && r.val[a + 1][b] < r.val[a][b]) return false;
      if (b + 1 <= nv && r.val[a][b + 1] < r.val[a][b]) return false;
    }
  // |Q(u2,v2) - Q(u1,v1)| <= |u2 - u1| + |v2 - v1|
  for (size_t a1 = 0; a1 <= nu; ++a1)
    for (size_t b1 = 0; b1 <= nv; ++b1)
      for (size_t a2 = a1; a2 <= nu; ++a2)
        for (size_t b2 = 0; b2 <= nv; ++b2) {
          Rational du = frac(a2 - a1, nu), dv = frac(b2 > b1 ? b2 - b1 : b1 - b2, nv);
          if (abs(r.val[a2][b2] - r.val[a1][b1]) > du + dv) return false;
        }
  return r.sections_convex();
}

Rational spearman_rho(const GridMatrix& g) {
  if (!is_discrete_copula(g) && !is_quasi(g))
    throw PreconditionFailed("spearman_rho needs a discrete copula or quasi-copula");
  Rational corners;
  for (size_t i = 0; i < g.p; ++i)
    for (size_t j = 0; j < g.q; ++j) corners += g.c(i, j) + g.c(i + 1, j) + g.c(i, j + 1) + g.c(i + 1, j + 1);
  // (12 / pq) * sum of cell means (corners / 4), minus 3
  return rat_normalize(3, static_cast<long>(g.p * g.q)) * corners - Rational(3);
}

}  // namespace copoly
