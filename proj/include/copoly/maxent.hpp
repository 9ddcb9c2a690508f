#pragma once

#include <string>
#include <vector>

#include "copoly/families.hpp"

namespace copoly {

// lambda . x + offset over density entries x_ij in row-major order, with x
// scaled as in the density-space systems (uniform density = all ones).
struct LinearFunctional {
  RatVec coeffs;
  Rational offset;
  Rational eval(const RatVec& x) const;
};

struct MomentConstraint {
  LinearFunctional functional;
  double target = 0;
};

struct MaxEntProblem {
  FamilySpec family;  // density space
  std::vector<MomentConstraint> moments;
  double tolerance = 1e-8;
  size_t max_iterations = 100000;
};

struct MaxEntSolution {
  size_t p = 0, q = 0;
  std::vector<double> density;  // row-major, entries sum to 1
  double entropy = 0;
  double kkt_residual = 0;
  size_t iterations = 0;
  double at(size_t i, size_t j) const { return density[i * q + j]; }
};

// Spearman's rho of the density as an exact affine functional.
LinearFunctional rho_functional(size_t p, size_t q);

// Throws Infeasible, NoInterior or NotConverged.
MaxEntSolution solve_maxent(const MaxEntProblem& problem);

struct AuditResult {
  double max_violation = 0;
  std::vector<std::string> violated;  // constraints off by more than the tolerance
};

// Rounds the rescaled solution to rationals with denominators up to 1e9 and
// evaluates every constraint of the exact system, moments included.
AuditResult audit_maxent(const MaxEntProblem& problem, const MaxEntSolution& solution, double tolerance);

}  // namespace copoly
