#pragma once

#include <vector>

#include "copoly/matrix.hpp"

namespace copoly {

// Cumulative values c_ij = C(i/p, j/q), a (p+1) x (q+1) matrix.
struct GridMatrix {
  size_t p = 0, q = 0;
  RatMatrix c;

  GridMatrix() = default;
  GridMatrix(size_t p, size_t q) : p(p), q(q), c(p + 1, q + 1) {}
  explicit GridMatrix(RatMatrix m);
  // Point in the grid coordinates used by the family constructors.
  static GridMatrix from_point(size_t p, size_t q, const RatVec& x);
  RatVec point() const { return c.data(); }
  friend bool operator==(const GridMatrix&, const GridMatrix&) = default;
};

// p x q matrix x_ij in density space (scaled by pq).
struct DensityMatrix {
  size_t p = 0, q = 0;
  RatMatrix x;

  DensityMatrix() = default;
  DensityMatrix(size_t p, size_t q) : p(p), q(q), x(p, q) {}
  explicit DensityMatrix(RatMatrix m);
  static DensityMatrix from_point(size_t p, size_t q, const RatVec& v);
  RatVec point() const { return x.data(); }
  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;
};

enum class Boundary {
  Uniform,   // c_0j = c_i0 = 0, c_pj = j/q, c_iq = i/p
  ZeroOnly,  // only c_0j = c_i0 = 0, as for aggregation functions
};

// x_ij = pq (c_ij + c_{i-1,j-1} - c_{i,j-1} - c_{i-1,j}). Throws BadBoundary.
DensityMatrix apply_T(const GridMatrix& g, Boundary check = Boundary::Uniform);

// c_ij = (1/pq) sum_{l<=i, h<=j} x_lh.
GridMatrix apply_T_inv(const DensityMatrix& d);

// Matrix of the unscaled T on the interior coordinates c_ij, i in [p],
// j in [q], in lexicographic order (boundary zeros substituted).
RatMatrix t_matrix(size_t p, size_t q);

// Matrix of tau on R^{p x q} in lexicographic basis order.
RatMatrix tau_matrix(size_t p, size_t q);
Rational tau_det(size_t p, size_t q);

GridMatrix transpose_point(const GridMatrix& g);
DensityMatrix transpose_density(const DensityMatrix& d);

// [[0, B], [D, 0]]: B top-right, D bottom-left.
DensityMatrix direct_sum(const DensityMatrix& b, const DensityMatrix& d);

// Square blocks rescaled to unit row sums first: (p+s) (B/p + D/s) placed as
// above, so the result keeps the p+s scaling of the density space. Throws
// NotSquare.
DensityMatrix direct_sum_square(const DensityMatrix& b, const DensityMatrix& d);

// Reverses the column order.
DensityMatrix flip(const DensityMatrix& d);

// Maximal anti-diagonal block decomposition, top-right block first. A single
// block means the matrix is indecomposable. Throws NotSquare.
std::vector<DensityMatrix> decompose(const DensityMatrix& d);

}  // namespace copoly
