#include "copoly/census.hpp"

#include <chrono>
#include <array>
#include <map>
#include <mutex>
#include <ostream>

#include "copoly/error.hpp"

namespace copoly {

namespace {

using Series = std::vector<Rational>;

Series mul(const Series& a, const Series& b, size_t degree) {
  Series out(degree + 1);
  for (size_t i = 0; i <= degree && i < a.size(); ++i)
    for (size_t j = 0; i + j <= degree && j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

struct Coefficients {
  Series v, d, id;
};

Coefficients coefficients(const std::vector<VertexCensus>& census, size_t degree) {
  Coefficients c{Series(degree + 1), Series(degree + 1), Series(degree + 1)};
  c.v[0] = Rational(1);
  c.d[0] = Rational(1);
  std::vector<bool> seen(degree + 1, false);
  seen[0] = true;
  for (const auto& e : census) {
    if (e.p == 0 || e.p > degree) continue;
    c.v[e.p] = Rational(static_cast<long>(e.total));
    c.d[e.p] = Rational(static_cast<long>(e.decomposable));
    c.id[e.p] = Rational(static_cast<long>(e.indecomposable));
    seen[e.p] = true;
  }
  for (size_t k = 1; k <= degree; ++k)
    if (!seen[k]) throw InsufficientData("census has no entry for p = " + std::to_string(k));
  return c;
}

Series one_minus(const Series& s) {
  Series out(s.size());
  for (size_t i = 0; i < s.size(); ++i) out[i] = -s[i];
  out[0] += Rational(1);
  return out;
}

bool is_one(const Series& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != Rational(i == 0 ? 1 : 0)) return false;
  return true;
}

}  // namespace

const VRep& square_vertices(Family family, size_t p) {
  static std::mutex mu;
  static std::map<std::pair<Family, size_t>, VRep> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(family, p);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  FamilySpec s;
  s.family = family;
  s.p = s.q = p;
  s.space = Space::DENSITY;
  return cache.emplace(key, enumerate_vertices(build(s))).first->second;
}

std::vector<VertexCensus> run_census(Family family, size_t p_max) {
  if (family != Family::UDC && family != Family::CDQ) throw InvalidArgument("census runs on udc or cdq");
  if (p_max > 5) throw InvalidArgument("census is limited to p <= 5");
  std::vector<VertexCensus> out;
  for (size_t p = 1; p <= p_max; ++p) {
    VertexCensus c;
    c.p = p;
    c.family = family;
    for (const auto& v : square_vertices(family, p).vertices) {
      ++c.total;
      if (decompose(DensityMatrix::from_point(p, p, v)).size() > 1)
        ++c.decomposable;
      else
        ++c.indecomposable;
    }
    out.push_back(c);
  }
  return out;
}

bool gf_check(const std::vector<VertexCensus>& census, size_t degree) {
  Coefficients c = coefficients(census, degree);
  if (!is_one(mul(c.d, one_minus(c.id), degree))) return false;
  Series lhs = mul(c.v, c.d, degree);
  Series rhs = mul(c.d, c.d, degree);
  for (size_t i = 0; i <= degree; ++i) rhs[i] += c.d[i];
  rhs[0] -= Rational(1);
  return lhs == rhs;
}

bool gf_check_unique_factorization(const std::vector<VertexCensus>& census, size_t degree) {
  Coefficients c = coefficients(census, degree);
  return is_one(mul(c.v, one_minus(c.id), degree));
}

std::vector<CountCell> vertex_count_cells() {
  static const std::pair<size_t, size_t> sizes[] = {{3, 3}, {3, 4}, {3, 5}, {4, 4}, {4, 5}, {5, 5}};
  static const std::pair<Family, std::array<size_t, 6>> expected[] = {
      {Family::UDC, {7, 52, 166, 115, 3321, 22890}},
      {Family::CDQ, {7, 52, 138, 69, 2163, 5447}},
      {Family::DQ, {7, 118, 416, 42, 7636, 429}},
      {Family::DC, {6, 96, 360, 24, 3000, 120}},
  };
  std::vector<CountCell> out;
  for (const auto& [family, counts] : expected)
    for (size_t k = 0; k < 6; ++k) {
      CountCell c;
      c.family = family;
      c.p = sizes[k].first;
      c.q = sizes[k].second;
      c.expected = counts[k];
      out.push_back(c);
    }
  return out;
}

void compute_cell(CountCell& cell) {
  FamilySpec s;
  s.family = cell.family;
  s.p = cell.p;
  s.q = cell.q;
  s.space = Space::DENSITY;
  HRep h = build(s);
  auto t0 = std::chrono::steady_clock::now();
  cell.computed = enumerate_vertices(h).vertices.size();
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void write_census_csv(std::ostream& out, const std::vector<VertexCensus>& census) {
  out << "p,family,total,decomposable,indecomposable\n";
  for (const auto& c : census)
    out << c.p << ',' << family_name(c.family) << ',' << c.total << ',' << c.decomposable << ',' << c.indecomposable
        << '\n';
}

}  // namespace copoly
