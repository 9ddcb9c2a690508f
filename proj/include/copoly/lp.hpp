#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "copoly/hrep.hpp"
#include "copoly/matrix.hpp"

namespace copoly {

enum class Sense { Max, Min };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVec point;  // ambient coordinates, empty unless Optimal
};

// Exact simplex with Bland's rule. Throws DimensionMismatch.
LpResult lp_solve(const RatVec& objective, const HRep& h, Sense sense);

// The inequalities of an H-rep rewritten as a y <= b over the free
// coordinates of its equality parametrization, with primitive integer rows.
struct ReducedSystem {
  AffineParam param;
  std::vector<IntVec> a;
  IntVec b;
  std::vector<size_t> source;       // constraint index in the H-rep
  std::vector<size_t> tautologies;  // inequalities that vanish and always hold
  bool infeasible = false;          // inconsistent equalities or a vanishing row that fails

  size_t n() const { return param.free_dim(); }
};

ReducedSystem reduce(const HRep& h);

// Rewrites coeffs.x <= rhs over the parametrization. Returns nullopt for a
// vanishing row, with `holds` telling whether 0 <= rhs - coeffs.x0.
std::optional<std::pair<IntVec, mpz_class>> reduce_row(const AffineParam& param, const RatVec& coeffs,
                                                       const Rational& rhs, bool* holds = nullptr);

struct RowRef {
  const IntVec* a;
  const mpz_class* b;
};

struct SimplexOutcome {
  LpStatus status = LpStatus::Infeasible;
  mpq_class value;
  std::vector<mpq_class> y;
  bool exceeded = false;  // stopped early because value passed the threshold
};

// max c.y subject to rows, y free. With stop_above set, returns as soon as a
// feasible basis has value strictly above it (status Optimal, exceeded=true).
SimplexOutcome simplex_max(size_t n, const std::vector<RowRef>& rows, const IntVec& c,
                           const mpq_class* stop_above = nullptr);

}  // namespace copoly
