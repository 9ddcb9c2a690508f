#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "copoly/rational.hpp"

namespace copoly {

using RatVec = std::vector<Rational>;
using IntVec = std::vector<mpz_class>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(size_t n);
  static RatMatrix from_rows(const std::vector<RatVec>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  RatVec row(size_t i) const;
  const std::vector<Rational>& data() const { return data_; }

  RatMatrix transpose() const;
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Exact determinant by fraction-free elimination. Throws NotSquare.
Rational det(const RatMatrix& m);

size_t rank(const RatMatrix& m);
size_t rank(const std::vector<RatVec>& rows, size_t cols);

mpz_class denominator_lcm(const RatVec& v);

// Scales a rational vector by the lcm of its denominators.
IntVec clear_denominators(const RatVec& v);

// Divides an integer vector by the gcd of its entries (no-op on zero).
void make_primitive(IntVec& v);

Rational dot(const RatVec& a, const RatVec& b);

// Affine parametrization x = x0 + M y of the solutions of E x = e, obtained
// from the reduced row echelon form. Non-pivot columns become the free
// coordinates y, in increasing column order.
struct AffineParam {
  bool consistent = true;
  size_t ambient = 0;
  RatVec x0;                 // particular solution
  RatMatrix basis;           // ambient x free
  std::vector<size_t> free;  // ambient column of each free coordinate

  size_t free_dim() const { return free.size(); }
  RatVec lift(const RatVec& y) const;
};

AffineParam solve_affine(const std::vector<RatVec>& eq_rows, const RatVec& eq_rhs, size_t ambient);

}  // namespace copoly
