#include "copoly/matrix.hpp"

#include <utility>

#include "copoly/error.hpp"

namespace copoly {

RatMatrix RatMatrix::identity(size_t n) {
  RatMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
  if (rows.empty()) return {};
  RatMatrix m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
    for (size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatVec RatMatrix::row(size_t i) const {
  return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
  RatMatrix c(a.rows_, b.cols_);
  for (size_t i = 0; i < a.rows_; ++i)
    for (size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

mpz_class denominator_lcm(const RatVec& v) {
  mpz_class l = 1;
  for (const auto& r : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.mpq().get_den_mpz_t());
  return l;
}

IntVec clear_denominators(const RatVec& v) {
  mpz_class l = denominator_lcm(v);
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i].num() * (l / v[i].den());
  return out;
}

void make_primitive(IntVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0 || g == 1) return;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length");
  mpq_class s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i].mpq() * b[i].mpq();
  return Rational(s);
}

namespace {

// Bareiss elimination in place on an integer matrix; returns the rank and,
// for square input, leaves the determinant (up to the recorded sign) in the
// last pivot.
size_t bareiss(std::vector<IntVec>& a, size_t cols, int& sign, mpz_class& last_pivot) {
  size_t m = a.size(), r = 0;
  mpz_class prev = 1;
  sign = 1;
  for (size_t c = 0; c < cols && r < m; ++c) {
    size_t piv = r;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      sign = -sign;
    }
    for (size_t i = r + 1; i < m; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        a[i][j] = a[i][j] * a[r][c] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  last_pivot = prev;
  return r;
}

}  // namespace

Rational det(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw NotSquare("determinant of a non-square matrix");
  size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<IntVec> a(n);
  mpz_class scale = 1;  // det(m) = det(a) / prod of the row multipliers
  for (size_t i = 0; i < n; ++i) {
    RatVec row = m.row(i);
    a[i] = clear_denominators(row);
    scale *= denominator_lcm(row);
  }
  int sign;
  mpz_class last;
  if (bareiss(a, n, sign, last) < n) return 0;
  return rat_normalize(sign * last, scale);
}

size_t rank(const std::vector<RatVec>& rows, size_t cols) {
  std::vector<IntVec> a;
  a.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("rank: row length");
    a.push_back(clear_denominators(r));
  }
  int sign;
  mpz_class last;
  return bareiss(a, cols, sign, last);
}

size_t rank(const RatMatrix& m) {
  std::vector<RatVec> rows;
  for (size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rank(rows, m.cols());
}

RatVec AffineParam::lift(const RatVec& y) const {
  if (y.size() != free.size()) throw DimensionMismatch("lift: wrong reduced dimension");
  RatVec x = x0;
  for (size_t i = 0; i < ambient; ++i) {
    mpq_class s = x[i].mpq();
    for (size_t k = 0; k < y.size(); ++k)
      if (!basis(i, k).is_zero()) s += basis(i, k).mpq() * y[k].mpq();
    x[i] = Rational(s);
  }
  return x;
}

AffineParam solve_affine(const std::vector<RatVec>& eq_rows, const RatVec& eq_rhs, size_t n) {
  // Reduced row echelon form over the rationals, augmented with the rhs.
  std::vector<std::vector<mpq_class>> a;
  for (size_t i = 0; i < eq_rows.size(); ++i) {
    if (eq_rows[i].size() != n) throw DimensionMismatch("equality row length");
    std::vector<mpq_class> r(n + 1);
    for (size_t j = 0; j < n; ++j) r[j] = eq_rows[i][j].mpq();
    r[n] = eq_rhs[i].mpq();
    a.push_back(std::move(r));
  }
  AffineParam out;
  out.ambient = n;
  std::vector<long> pivot_row_of(n, -1);
  size_t r = 0;
  for (size_t c = 0; c < n && r < a.size(); ++c) {
    size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (size_t j = c; j <= n; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_row_of[c] = static_cast<long>(r);
    ++r;
  }
  for (size_t i = r; i < a.size(); ++i)
    if (a[i][n] != 0) out.consistent = false;
  for (size_t c = 0; c < n; ++c)
    if (pivot_row_of[c] < 0) out.free.push_back(c);
  out.x0.assign(n, Rational(0));
  out.basis = RatMatrix(n, out.free.size());
  for (size_t k = 0; k < out.free.size(); ++k) out.basis(out.free[k], k) = 1;
  for (size_t c = 0; c < n; ++c) {
    if (pivot_row_of[c] < 0) continue;
    const auto& row = a[pivot_row_of[c]];
    out.x0[c] = Rational(row[n]);
    for (size_t k = 0; k < out.free.size(); ++k) out.basis(c, k) = Rational(mpq_class(-row[out.free[k]]));
  }
  return out;
}

}  // namespace copoly
