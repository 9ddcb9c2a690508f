#pragma once

#include <string>
#include <vector>

#include "copoly/transforms.hpp"

namespace copoly {

enum class Named { Pi, M, W };

// c_ij = C(i/p, j/q) for the product, upper and lower Frechet bounds.
GridMatrix restriction(Named c, size_t p, size_t q);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violations;
  explicit operator bool() const { return ok; }
};

CheckResult is_discrete_copula(const GridMatrix& g);
// Membership in UDC_{p,q} through its minimal system.
CheckResult is_ultramodular(const GridMatrix& g);
CheckResult is_quasi(const GridMatrix& g);
CheckResult is_convex_quasi(const GridMatrix& g);

struct ExtensionQuery {
  Rational u, v;
};

// Bilinear interpolation on the cell containing (u, v); cells are half-open
// except the last one in each direction. Throws OutOfRange.
Rational checkerboard_eval(const GridMatrix& g, const ExtensionQuery& query);

// Jensen midpoint test on every horizontal and vertical section of the
// extension over the grid refined `refinement` times. Throws
// PreconditionFailed unless g is ultramodular.
bool verify_extension_ultramodular(const GridMatrix& g, size_t refinement);

// Boundary values, monotonicity, the 1-Lipschitz bound between all refined
// grid points, and section convexity. Throws PreconditionFailed unless g is
// a convex discrete quasi-copula.
bool verify_extension_quasi(const GridMatrix& g, size_t refinement);

// 12 times the integral of the extension, minus 3. Throws PreconditionFailed
// unless g is a discrete (quasi-)copula.
Rational spearman_rho(const GridMatrix& g);

}  // namespace copoly
