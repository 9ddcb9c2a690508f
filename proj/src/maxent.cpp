#include "copoly/maxent.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "copoly/error.hpp"
#include "copoly/lp.hpp"
#include "copoly/transforms.hpp"

namespace copoly {

namespace {

constexpr long kAuditDen = 1000000000;

struct System {
  HRep h;
  size_t p = 0, q = 0;
};

System density_system(const MaxEntProblem& pr) {
  if (pr.family.space != Space::DENSITY) throw InvalidArgument("maxent works on density-space families");
  if (!(pr.tolerance > 0)) throw InvalidArgument("tolerance must be positive");
  System s{build(pr.family), pr.family.p, pr.family.q};
  if (s.h.dim != s.p * s.q) throw InvalidArgument("family " + pr.family.str() + " has no density coordinates");
  for (const auto& m : pr.moments)
    if (m.functional.coeffs.size() != s.h.dim) throw DimensionMismatch("moment functional has the wrong length");
  return s;
}

// Moment constraints appended as equalities with rational targets.
HRep with_moments(const HRep& h, const std::vector<MomentConstraint>& moments) {
  HRep out = h;
  for (size_t k = 0; k < moments.size(); ++k) {
    const auto& m = moments[k];
    out.add(m.functional.coeffs, Kind::EQ, rationalize(m.target, kAuditDen) - m.functional.offset,
            "moment" + std::to_string(k + 1));
  }
  return out;
}

// max t in [0, 1] with every inequality and x_ij > 0 holding with slack t.
RatVec interior_point(const HRep& h) {
  const size_t n = h.dim;
  HRep lp;
  lp.dim = n + 1;
  for (size_t k = 0; k < h.size(); ++k) {
    const auto& c = h.constraints[k];
    RatVec a = c.coeffs;
    Rational b = c.rhs;
    if (c.kind == Kind::GE) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    a.push_back(Rational(c.kind == Kind::EQ ? 0 : 1));
    lp.add(std::move(a), c.kind == Kind::EQ ? Kind::EQ : Kind::LE, b, h.labels[k]);
  }
  for (size_t j = 0; j < n; ++j) {
    RatVec a(n + 1);
    a[j] = Rational(-1);
    a[n] = Rational(1);
    lp.add(std::move(a), Kind::LE, Rational(0), "positive" + std::to_string(j));
  }
  RatVec cap(n + 1);
  cap[n] = Rational(1);
  lp.add(cap, Kind::LE, Rational(1), "cap");
  // t >= 0 keeps the slack from relaxing an infeasible system
  lp.add(cap, Kind::GE, Rational(0), "floor");
  LpResult r = lp_solve(cap, lp, Sense::Max);
  if (r.status == LpStatus::Infeasible) throw Infeasible("maxent constraints are infeasible");
  if (r.value.sign() <= 0) throw NoInterior("maxent constraints have no strictly positive interior point");
  r.point.pop_back();
  return r.point;
}

bool strictly_inside(const HRep& h, const RatVec& x) {
  for (const auto& c : h.constraints) {
    Rational v = c.lhs(x);
    if (c.kind == Kind::EQ ? v != c.rhs : (c.kind == Kind::LE ? !(v < c.rhs) : !(v > c.rhs))) return false;
  }
  return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.sign() > 0; });
}

double xlogx_sum(const Eigen::VectorXd& z) {
  double s = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) s += z[i] * std::log(std::max(z[i], 1e-300));
  return s;
}

class Barrier {
 public:
  // z = x / scale; inequalities G z <= g, equalities E z = e.
  Barrier(const Eigen::MatrixXd& G, const Eigen::VectorXd& g, const Eigen::MatrixXd& E, const Eigen::VectorXd& e,
          const Eigen::MatrixXd& Q)
      : G_(G), g_(g), E_(E), e_(e), Q_(Q) {}

  // Centering by damped Newton; returns the number of steps taken.
  size_t center(Eigen::VectorXd& z, double mu, size_t budget) {
    size_t steps = 0;
    while (steps < budget) {
      Eigen::VectorXd s = g_ - G_ * z;
      Eigen::VectorXd grad = gradient(z, s, mu);
      Eigen::VectorXd gr = Q_.transpose() * grad;
      if (gr.size() == 0) return steps;
      Eigen::MatrixXd H = Q_.transpose() * hessian(z, s, mu) * Q_;
      Eigen::VectorXd dy = H.ldlt().solve(-gr);
      double dec = -gr.dot(dy);
      if (!(dec > 1e-22)) return steps;
      Eigen::VectorXd dz = Q_ * dy;
      ++steps;
      double t = max_step(z, s, dz);
      if (dec > 1e-12) {
        double f0 = value(z, s, mu);
        while (t > 1e-16) {
          Eigen::VectorXd zt = z + t * dz;
          if (value(zt, g_ - G_ * zt, mu) <= f0 - 0.25 * t * dec) break;
          t *= 0.5;
        }
      }
      z += t * dz;
      if (t <= 1e-16) return steps;
    }
    return steps;
  }

  double residual(const Eigen::VectorXd& z, double mu) const {
    Eigen::VectorXd s = g_ - G_ * z;
    double r = (Q_.transpose() * gradient(z, s, mu)).norm();
    if (E_.rows()) r += (E_ * z - e_).lpNorm<Eigen::Infinity>();
    if (G_.rows()) r += std::max(0.0, -s.minCoeff()) + mu * static_cast<double>(G_.rows());
    return r;
  }

 private:
  Eigen::VectorXd gradient(const Eigen::VectorXd& z, const Eigen::VectorXd& s, double mu) const {
    Eigen::VectorXd grad(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) grad[i] = std::log(std::max(z[i], 1e-300)) + 1;
    if (G_.rows() && mu > 0) grad += G_.transpose() * (mu * s.cwiseInverse());
    return grad;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& z, const Eigen::VectorXd& s, double mu) const {
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(z.size(), z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) H(i, i) = 1 / std::max(z[i], 1e-300);
    if (G_.rows() && mu > 0) H += G_.transpose() * (mu * s.array().square().inverse()).matrix().asDiagonal() * G_;
    return H;
  }

  double value(const Eigen::VectorXd& z, const Eigen::VectorXd& s, double mu) const {
    if (z.minCoeff() <= 0 || (s.size() && s.minCoeff() <= 0)) return std::numeric_limits<double>::infinity();
    double f = xlogx_sum(z);
    for (Eigen::Index k = 0; k < s.size(); ++k) f -= mu * std::log(s[k]);
    return f;
  }

  // Largest step keeping z and s positive, backed off from the boundary.
  static double max_step(const Eigen::VectorXd& z, const Eigen::VectorXd& s, const Eigen::VectorXd& dz,
                         const Eigen::MatrixXd& G) {
    double t = 1;
    for (Eigen::Index i = 0; i < z.size(); ++i)
      if (dz[i] < 0) t = std::min(t, -0.99 * z[i] / dz[i]);
    if (G.rows()) {
      Eigen::VectorXd ds = -G * dz;
      for (Eigen::Index k = 0; k < s.size(); ++k)
        if (ds[k] < 0) t = std::min(t, -0.99 * s[k] / ds[k]);
    }
    return t;
  }
  double max_step(const Eigen::VectorXd& z, const Eigen::VectorXd& s, const Eigen::VectorXd& dz) const {
    return max_step(z, s, dz, G_);
  }

  Eigen::MatrixXd G_;
  Eigen::VectorXd g_;
  Eigen::MatrixXd E_;
  Eigen::VectorXd e_;
  Eigen::MatrixXd Q_;
};

}  // namespace

Rational LinearFunctional::eval(const RatVec& x) const { return dot(coeffs, x) + offset; }

LinearFunctional rho_functional(size_t p, size_t q) {
  // rho = (3/pq) sum_ij w_ij c_ij - 3, where w_ij counts the cells having
  // (i, j) as a corner; pushed through c = T^{-1} x one basis vector at a time.
  auto corners = [](size_t i, size_t n) { return (i == 0 || i == n) ? 1L : 2L; };
  LinearFunctional f;
  f.coeffs.assign(p * q, Rational());
  f.offset = Rational(-3);
  const Rational scale = rat_normalize(3, static_cast<long>(p * q));
  for (size_t l = 1; l <= p; ++l)
    for (size_t h = 1; h <= q; ++h) {
      DensityMatrix e(p, q);
      e.x(l - 1, h - 1) = Rational(1);
      GridMatrix g = apply_T_inv(e);
      Rational acc;
      for (size_t i = 0; i <= p; ++i)
        for (size_t j = 0; j <= q; ++j)
          if (!g.c(i, j).is_zero()) acc += Rational(corners(i, p) * corners(j, q)) * g.c(i, j);
      f.coeffs[density_index(q, l, h)] = scale * acc;
    }
  return f;
}

MaxEntSolution solve_maxent(const MaxEntProblem& pr) {
  System sys = density_system(pr);
  const size_t n = sys.h.dim;
  HRep full = with_moments(sys.h, pr.moments);
  RatVec xstar = interior_point(full);
  Rational mass;
  for (const auto& v : xstar) mass += v;

  // Exact equalities and inequalities over z = x / mass.
  std::vector<RatVec> eq_rows;
  RatVec eq_rhs;
  std::vector<double> eq_target;
  std::vector<RatVec> ineq_rows;
  std::vector<double> ineq_rhs;
  for (size_t k = 0; k < sys.h.size(); ++k) {
    const auto& c = sys.h.constraints[k];
    RatVec a = c.coeffs;
    for (auto& x : a) x = x * mass;
    if (c.kind == Kind::EQ) {
      eq_rows.push_back(a);
      eq_rhs.push_back(c.rhs);
      eq_target.push_back(c.rhs.to_double());
      continue;
    }
    double b = c.rhs.to_double();
    if (c.kind == Kind::GE) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    ineq_rows.push_back(std::move(a));
    ineq_rhs.push_back(b);
  }
  for (size_t k = 0; k < pr.moments.size(); ++k) {
    const auto& m = pr.moments[k];
    RatVec a = m.functional.coeffs;
    for (auto& x : a) x = x * mass;
    eq_rows.push_back(std::move(a));
    eq_rhs.push_back(full.constraints[sys.h.size() + k].rhs);
    eq_target.push_back(m.target - m.functional.offset.to_double());
  }
  AffineParam param = solve_affine(eq_rows, eq_rhs, n);
  if (!param.consistent) throw Infeasible("maxent equalities are inconsistent");

  const size_t k = param.free_dim();
  Eigen::MatrixXd N(n, k);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j) N(i, j) = param.basis(i, j).to_double();
  Eigen::MatrixXd Q = k ? Eigen::MatrixXd(Eigen::HouseholderQR<Eigen::MatrixXd>(N).householderQ() *
                                          Eigen::MatrixXd::Identity(n, k))
                        : Eigen::MatrixXd(n, 0);
  auto to_matrix = [n](const std::vector<RatVec>& rows) {
    Eigen::MatrixXd M(rows.size(), n);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < n; ++j) M(i, j) = rows[i][j].to_double();
    return M;
  };
  Eigen::MatrixXd E = to_matrix(eq_rows), G = to_matrix(ineq_rows);
  Eigen::VectorXd e = Eigen::Map<Eigen::VectorXd>(eq_target.data(), eq_target.size());
  Eigen::VectorXd g = Eigen::Map<Eigen::VectorXd>(ineq_rhs.data(), ineq_rhs.size());

  // Uniform start when it is strictly feasible, else halfway between uniform
  // and the LP interior point when both satisfy the equalities.
  RatVec uniform(n, mass * rat_normalize(1, static_cast<long>(n)));
  RatVec start = xstar;
  if (strictly_inside(full, uniform)) {
    start = uniform;
  } else {
    bool eq_ok = true;
    for (const auto& c : full.constraints)
      if (c.kind == Kind::EQ && c.lhs(uniform) != c.rhs) eq_ok = false;
    if (eq_ok)
      for (size_t i = 0; i < n; ++i) start[i] = (uniform[i] + xstar[i]) * rat_normalize(1, 2);
  }
  Eigen::VectorXd z(n);
  for (size_t i = 0; i < n; ++i) z[i] = (start[i] / mass).to_double();
  if (E.rows()) z -= E.completeOrthogonalDecomposition().solve(E * z - e);

  MaxEntSolution sol;
  sol.p = sys.p;
  sol.q = sys.q;
  Barrier barrier(G, g, E, e, Q);

  // Equality-only optimum first. When it already satisfies the inequalities
  // it is the answer, with zero multipliers; the barrier path would only
  // creep up on it when it sits on the boundary.
  {
    Eigen::VectorXd y = z;
    Barrier free(Eigen::MatrixXd(0, static_cast<Eigen::Index>(n)), Eigen::VectorXd(0), E, e, Q);
    size_t used = free.center(y, 0, pr.max_iterations);
    if (barrier.residual(y, 0) <= pr.tolerance) {
      sol.iterations = used;
      sol.density.assign(y.data(), y.data() + n);
      sol.entropy = -xlogx_sum(y);
      sol.kkt_residual = barrier.residual(y, 0);
      return sol;
    }
  }
  double mu = G.rows() ? 1.0 : 0.0;
  double res = 0;
  for (;;) {
    sol.iterations += barrier.center(z, mu, pr.max_iterations - sol.iterations);
    res = barrier.residual(z, mu);
    if (res <= pr.tolerance) break;
    if (sol.iterations >= pr.max_iterations || mu < 1e-300) throw NotConverged(sol.iterations, res);
    if (mu > 0) {
      mu *= 0.1;
    } else if (barrier.center(z, mu, 1) == 0) {
      throw NotConverged(sol.iterations, res);
    }
  }
  sol.density.assign(z.data(), z.data() + n);
  sol.entropy = -xlogx_sum(z);
  sol.kkt_residual = res;
  return sol;
}

AuditResult audit_maxent(const MaxEntProblem& pr, const MaxEntSolution& sol, double tolerance) {
  System sys = density_system(pr);
  HRep full = with_moments(sys.h, pr.moments);
  const size_t n = sys.h.dim;
  if (sol.density.size() != n) throw DimensionMismatch("solution does not match the family");
  // Total mass fixed by the equalities, taken from an exact feasible point.
  LpResult any = lp_solve(RatVec(n), full, Sense::Max);
  if (any.status != LpStatus::Optimal) throw Infeasible("maxent constraints are infeasible");
  Rational mass;
  for (const auto& v : any.point) mass += v;
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = mass * rationalize(sol.density[i], kAuditDen);
  AuditResult out;
  for (size_t k = 0; k < full.size(); ++k) {
    const auto& c = full.constraints[k];
    double off;
    if (k >= sys.h.size()) {
      // judge moments against the real target
      const auto& m = pr.moments[k - sys.h.size()];
      off = std::abs(m.functional.eval(x).to_double() - m.target);
    } else {
      Rational d = c.lhs(x) - c.rhs;
      off = c.kind == Kind::EQ ? std::abs(d.to_double())
                               : std::max(0.0, (c.kind == Kind::LE ? d : -d).to_double());
    }
    out.max_violation = std::max(out.max_violation, off);
    if (off > tolerance) out.violated.push_back(full.labels[k]);
  }
  return out;
}

}  // namespace copoly
