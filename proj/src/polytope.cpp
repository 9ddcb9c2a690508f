#include "copoly/polytope.hpp"

#include <algorithm>
#include <numeric>

#include "copoly/error.hpp"
#include "dd.hpp"

namespace copoly {

namespace {

std::vector<RowRef> refs(const ReducedSystem& red) {
  std::vector<RowRef> rows;
  for (size_t i = 0; i < red.a.size(); ++i) rows.push_back({&red.a[i], &red.b[i]});
  return rows;
}

bool feasible(const ReducedSystem& red) {
  if (red.infeasible) return false;
  IntVec zero(red.n(), 0);
  return simplex_max(red.n(), refs(red), zero).status == LpStatus::Optimal;
}

bool lex_less(const RatVec& a, const RatVec& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

}  // namespace

AffineParam equality_param(const HRep& h) {
  std::vector<RatVec> eq;
  RatVec rhs;
  for (const auto& c : h.constraints)
    if (c.kind == Kind::EQ) {
      eq.push_back(c.coeffs);
      rhs.push_back(c.rhs);
    }
  return solve_affine(eq, rhs, h.dim);
}

VRep enumerate_vertices(const HRep& h, InsertionOrder order) {
  ReducedSystem red = reduce(h);
  if (!feasible(red)) throw EmptyPolytope("polytope is empty");
  const size_t k = red.n();
  // Every reduced coordinate must be bounded in both directions.
  auto rows = refs(red);
  for (size_t j = 0; j < k; ++j)
    for (int s : {1, -1}) {
      IntVec c(k, 0);
      c[j] = s;
      if (simplex_max(k, rows, c).status == LpStatus::Unbounded)
        throw Unbounded("polyhedron is unbounded in coordinate direction " + std::to_string(j));
    }
  std::vector<size_t> ord(red.a.size());
  std::iota(ord.begin(), ord.end(), 0);
  if (order == InsertionOrder::ByLabel)
    std::stable_sort(ord.begin(), ord.end(),
                     [&](size_t x, size_t y) { return h.labels[red.source[x]] < h.labels[red.source[y]]; });
  VRep out;
  out.dim = h.dim;
  for (const auto& y : detail::dd_vertices(red, ord)) {
    RatVec ry(k);
    for (size_t j = 0; j < k; ++j) ry[j] = Rational(y[j]);
    out.vertices.push_back(red.param.lift(ry));
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  return out;
}

RatVec random_convex_combination(const VRep& v, std::mt19937_64& rng) {
  if (v.vertices.empty()) throw EmptyPolytope("no vertices to combine");
  RatVec out(v.dim);
  long total = 0;
  for (const auto& x : v.vertices) {
    long w = static_cast<long>(rng() % 100) + 1;
    total += w;
    for (size_t j = 0; j < v.dim; ++j) out[j] += Rational(w) * x[j];
  }
  const Rational inv = rat_normalize(1, total);
  for (auto& x : out) x = x * inv;
  return out;
}

MinimalResult certify_minimal(const HRep& h) {
  ReducedSystem red = reduce(h);
  if (!feasible(red)) throw EmptyPolytope("polytope is empty");
  const size_t m = red.a.size(), k = red.n();
  std::vector<bool> kept(m, true);
  for (size_t i = 0; i < m; ++i) {
    // max a_i y over the other kept rows, capped by a_i y <= b_i + 1.
    std::vector<RowRef> rows;
    for (size_t j = 0; j < m; ++j)
      if (j != i && kept[j]) rows.push_back({&red.a[j], &red.b[j]});
    mpz_class cap = red.b[i] + 1;
    rows.push_back({&red.a[i], &cap});
    mpq_class threshold(red.b[i]);
    SimplexOutcome out = simplex_max(k, rows, red.a[i], &threshold);
    if (out.status == LpStatus::Infeasible) throw EmptyPolytope("polytope is empty");
    if (!out.exceeded && out.value <= threshold) kept[i] = false;
  }
  MinimalResult res;
  res.minimal.dim = h.dim;
  std::vector<bool> keep_constraint(h.size(), false);
  for (size_t i = 0; i < h.size(); ++i) keep_constraint[i] = h.constraints[i].kind == Kind::EQ;
  for (size_t i = 0; i < m; ++i) keep_constraint[red.source[i]] = kept[i];
  std::vector<size_t> order;
  for (size_t i = 0; i < h.size(); ++i)
    if (h.constraints[i].kind == Kind::EQ) order.push_back(i);
  for (size_t i = 0; i < h.size(); ++i)
    if (h.constraints[i].kind != Kind::EQ) {
      if (keep_constraint[i]) order.push_back(i);
      else res.removed.push_back(h.labels[i]);
    }
  res.minimal = h.subset(order);
  return res;
}

bool is_vertex(const HRep& h, const RatVec& x) {
  Membership m = contains(h, x);
  if (!m.inside) throw NotMember("point violates " + m.violated.front());
  std::vector<RatVec> active;
  for (const auto& c : h.constraints)
    if (c.kind == Kind::EQ || c.active_at(x)) active.push_back(c.coeffs);
  return rank(active, h.dim) == h.dim;
}

size_t dimension(const HRep& h) {
  ReducedSystem red = reduce(h);
  if (!feasible(red)) throw EmptyPolytope("polytope is empty");
  const size_t k = red.n(), m = red.a.size();
  if (m == 0) return k;
  // max t with a_i y + t <= b_i, t <= 1: positive iff full-dimensional.
  std::vector<IntVec> a(m + 1, IntVec(k + 1, 0));
  IntVec b(m + 1);
  for (size_t i = 0; i < m; ++i) {
    std::copy(red.a[i].begin(), red.a[i].end(), a[i].begin());
    a[i][k] = 1;
    b[i] = red.b[i];
  }
  a[m][k] = 1;
  b[m] = 1;
  std::vector<RowRef> rows;
  for (size_t i = 0; i <= m; ++i) rows.push_back({&a[i], &b[i]});
  IntVec c(k + 1, 0);
  c[k] = 1;
  if (simplex_max(k + 1, rows, c).value > 0) return k;
  // Otherwise collect the implicit equalities: rows with min a_i y = b_i.
  auto base = refs(red);
  std::vector<RatVec> implicit;
  for (size_t i = 0; i < m; ++i) {
    IntVec neg(k);
    for (size_t j = 0; j < k; ++j) neg[j] = -red.a[i][j];
    SimplexOutcome out = simplex_max(k, base, neg);
    if (out.status == LpStatus::Optimal && out.value == mpq_class(-red.b[i])) {
      RatVec row(k);
      for (size_t j = 0; j < k; ++j) row[j] = Rational(red.a[i][j]);
      implicit.push_back(std::move(row));
    }
  }
  return k - rank(implicit, k);
}

std::vector<CanonicalRow> canonical_rows(const HRep& h, const AffineParam& param) {
  std::vector<CanonicalRow> out;
  for (const auto& c : h.constraints) {
    if (c.kind == Kind::EQ) continue;
    RatVec coeffs = c.coeffs;
    Rational rhs = c.rhs;
    if (c.kind == Kind::GE) {
      for (auto& x : coeffs) x = -x;
      rhs = -rhs;
    }
    auto row = reduce_row(param, coeffs, rhs);
    if (!row) {
      out.emplace_back();
      continue;
    }
    row->first.push_back(row->second);
    out.push_back(std::move(row->first));
  }
  return out;
}

std::set<CanonicalRow> canonical_inequalities(const HRep& h, const AffineParam& param) {
  std::set<CanonicalRow> out;
  for (auto& r : canonical_rows(h, param))
    if (!r.empty()) out.insert(std::move(r));
  return out;
}

std::vector<std::vector<size_t>> vertices_on_inequalities(const HRep& h, const VRep& v) {
  std::vector<std::vector<size_t>> out;
  for (const auto& c : h.constraints) {
    if (c.kind == Kind::EQ) continue;
    std::vector<size_t> on;
    for (size_t i = 0; i < v.vertices.size(); ++i)
      if (c.active_at(v.vertices[i])) on.push_back(i);
    out.push_back(std::move(on));
  }
  return out;
}

}  // namespace copoly
