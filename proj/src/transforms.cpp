#include "copoly/transforms.hpp"

#include "copoly/error.hpp"

namespace copoly {

GridMatrix::GridMatrix(RatMatrix m) : p(m.rows() - 1), q(m.cols() - 1), c(std::move(m)) {
  if (c.rows() == 0 || c.cols() == 0) throw DimensionMismatch("grid matrix needs at least one row and column");
}

GridMatrix GridMatrix::from_point(size_t p, size_t q, const RatVec& x) {
  if (x.size() != (p + 1) * (q + 1)) throw DimensionMismatch("grid point length");
  GridMatrix g(p, q);
  for (size_t i = 0; i <= p; ++i)
    for (size_t j = 0; j <= q; ++j) g.c(i, j) = x[i * (q + 1) + j];
  return g;
}

DensityMatrix::DensityMatrix(RatMatrix m) : p(m.rows()), q(m.cols()), x(std::move(m)) {}

DensityMatrix DensityMatrix::from_point(size_t p, size_t q, const RatVec& v) {
  if (v.size() != p * q) throw DimensionMismatch("density point length");
  DensityMatrix d(p, q);
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < q; ++j) d.x(i, j) = v[i * q + j];
  return d;
}

DensityMatrix apply_T(const GridMatrix& g, Boundary check) {
  const size_t p = g.p, q = g.q;
  for (size_t i = 0; i <= p; ++i)
    for (size_t j = 0; j <= q; ++j) {
      bool bad = false;
      if ((i == 0 || j == 0) && !g.c(i, j).is_zero()) bad = true;
      if (check == Boundary::Uniform && i == p && j > 0 && g.c(i, j) != rat_normalize(j, q)) bad = true;
      if (check == Boundary::Uniform && j == q && i > 0 && g.c(i, j) != rat_normalize(i, p)) bad = true;
      if (bad)
        throw BadBoundary("boundary value c(" + std::to_string(i) + "," + std::to_string(j) + ") = " + g.c(i, j).str());
    }
  DensityMatrix d(p, q);
  const Rational scale(static_cast<long>(p * q));
  for (size_t i = 1; i <= p; ++i)
    for (size_t j = 1; j <= q; ++j)
      d.x(i - 1, j - 1) = scale * (g.c(i, j) + g.c(i - 1, j - 1) - g.c(i, j - 1) - g.c(i - 1, j));
  return d;
}

GridMatrix apply_T_inv(const DensityMatrix& d) {
  const size_t p = d.p, q = d.q;
  GridMatrix g(p, q);
  const Rational inv = rat_normalize(1, static_cast<long>(p * q));
  // running two-dimensional prefix sums
  RatMatrix s(p + 1, q + 1);
  for (size_t i = 1; i <= p; ++i)
    for (size_t j = 1; j <= q; ++j) s(i, j) = d.x(i - 1, j - 1) + s(i - 1, j) + s(i, j - 1) - s(i - 1, j - 1);
  for (size_t i = 0; i <= p; ++i)
    for (size_t j = 0; j <= q; ++j) g.c(i, j) = s(i, j) * inv;
  return g;
}

RatMatrix t_matrix(size_t p, size_t q) {
  RatMatrix m(p * q, p * q);
  auto idx = [q](size_t i, size_t j) { return (i - 1) * q + (j - 1); };
  for (size_t i = 1; i <= p; ++i)
    for (size_t j = 1; j <= q; ++j) {
      size_t r = idx(i, j);
      m(r, idx(i, j)) += 1;
      if (i > 1 && j > 1) m(r, idx(i - 1, j - 1)) += 1;
      if (j > 1) m(r, idx(i, j - 1)) -= 1;
      if (i > 1) m(r, idx(i - 1, j)) -= 1;
    }
  return m;
}

RatMatrix tau_matrix(size_t p, size_t q) {
  if (p < 2 || q < 2) throw InvalidArgument("tau needs p, q >= 2");
  RatMatrix m(p * q, p * q);
  auto idx = [q](size_t i, size_t j) { return (i - 1) * q + (j - 1); };
  for (size_t i = 1; i <= p; ++i)
    for (size_t j = 1; j <= q; ++j) {
      size_t col = idx(i, j);
      if (i < p && j < q) {
        for (size_t k = 1; k <= i; ++k) {
          m(idx(k, j), col) += 1;
          m(idx(k, j + 1), col) -= 1;
        }
      } else if (i < p) {
        for (size_t k = 1; k <= q; ++k) {
          m(idx(i, k), col) += 1;
          m(idx(i + 1, k), col) -= 1;
        }
      } else if (j < q) {
        for (size_t k = 1; k <= j; ++k) {
          m(idx(p - 1, k), col) += 1;
          m(idx(p, k), col) -= 1;
        }
      } else {
        m(idx(p, q), col) += 1;
      }
    }
  return m;
}

Rational tau_det(size_t p, size_t q) { return det(tau_matrix(p, q)); }

GridMatrix transpose_point(const GridMatrix& g) { return GridMatrix(g.c.transpose()); }

DensityMatrix transpose_density(const DensityMatrix& d) { return DensityMatrix(d.x.transpose()); }

DensityMatrix direct_sum(const DensityMatrix& b, const DensityMatrix& d) {
  DensityMatrix out(b.p + d.p, b.q + d.q);
  for (size_t i = 0; i < b.p; ++i)
    for (size_t j = 0; j < b.q; ++j) out.x(i, d.q + j) = b.x(i, j);
  for (size_t i = 0; i < d.p; ++i)
    for (size_t j = 0; j < d.q; ++j) out.x(b.p + i, j) = d.x(i, j);
  return out;
}

DensityMatrix direct_sum_square(const DensityMatrix& b, const DensityMatrix& d) {
  if (b.p != b.q || d.p != d.q) throw NotSquare("direct_sum_square needs square blocks");
  const long n = static_cast<long>(b.p + d.p);
  DensityMatrix bs = b, ds = d;
  const Rational fb = rat_normalize(n, static_cast<long>(b.p)), fd = rat_normalize(n, static_cast<long>(d.p));
  for (size_t i = 0; i < b.p; ++i)
    for (size_t j = 0; j < b.q; ++j) bs.x(i, j) = b.x(i, j) * fb;
  for (size_t i = 0; i < d.p; ++i)
    for (size_t j = 0; j < d.q; ++j) ds.x(i, j) = d.x(i, j) * fd;
  return direct_sum(bs, ds);
}

DensityMatrix flip(const DensityMatrix& d) {
  DensityMatrix out(d.p, d.q);
  for (size_t i = 0; i < d.p; ++i)
    for (size_t j = 0; j < d.q; ++j) out.x(i, d.q - 1 - j) = d.x(i, j);
  return out;
}

namespace {

bool zero_block(const RatMatrix& m, size_t r0, size_t r1, size_t c0, size_t c1) {
  for (size_t i = r0; i < r1; ++i)
    for (size_t j = c0; j < c1; ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

DensityMatrix block(const RatMatrix& m, size_t r0, size_t c0, size_t n) {
  DensityMatrix b(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) b.x(i, j) = m(r0 + i, c0 + j);
  return b;
}

}  // namespace

std::vector<DensityMatrix> decompose(const DensityMatrix& d) {
  if (d.p != d.q) throw NotSquare("decompose needs a square matrix");
  const size_t n = d.p;
  for (size_t k = 1; k < n; ++k) {
    // Both off-diagonal blocks must vanish. For a nonnegative matrix with
    // equal row and column margins this is the same as a zero cumulative
    // value at the split corner.
    bool split = zero_block(d.x, 0, k, 0, n - k) && zero_block(d.x, k, n, n - k, n);
    if (!split) continue;
    std::vector<DensityMatrix> out{block(d.x, 0, n - k, k)};
    for (auto& b : decompose(block(d.x, k, 0, n - k))) out.push_back(std::move(b));
    return out;
  }
  return {d};
}

}  // namespace copoly
