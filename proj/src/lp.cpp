#include "copoly/lp.hpp"

#include "copoly/error.hpp"

namespace copoly {

namespace {

// Integer dictionary in the lrs style: every entry carries the common
// denominator d, so row i reads x_B(i) + sum_j T(i,j)/d x_N(j) = T(i,0)/d.
// Row 0 is the objective z + sum_j T(0,j)/d x_N(j) = T(0,0)/d.
class Tableau {
 public:
  Tableau(size_t rows, size_t cols) : m_(rows), w_(cols + 1), t_((rows + 1) * (cols + 1)), d_(1) {}

  mpz_class& at(size_t i, size_t j) { return t_[i * w_ + j]; }
  const mpz_class& d() const { return d_; }
  size_t rows() const { return m_; }
  size_t cols() const { return w_ - 1; }

  void pivot(size_t r, size_t s) {
    mpz_class prs = at(r, s), tmp;
    for (size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      mpz_class ais = at(i, s);
      mpz_class* row = &t_[i * w_];
      const mpz_class* prow = &t_[r * w_];
      for (size_t j = 0; j < w_; ++j) {
        if (j == s) continue;
        mpz_mul(tmp.get_mpz_t(), row[j].get_mpz_t(), prs.get_mpz_t());
        if (sgn(ais) != 0) mpz_submul(tmp.get_mpz_t(), ais.get_mpz_t(), prow[j].get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), d_.get_mpz_t());
      }
      mpz_neg(row[s].get_mpz_t(), ais.get_mpz_t());
    }
    at(r, s) = d_;
    d_ = prs;
    if (sgn(d_) < 0) {
      for (auto& v : t_) mpz_neg(v.get_mpz_t(), v.get_mpz_t());
      d_ = -d_;
    }
  }

 private:
  size_t m_, w_;
  std::vector<mpz_class> t_;
  mpz_class d_;
};

class Simplex {
 public:
  Simplex(size_t n, const std::vector<RowRef>& rows) : n_(n), m_(rows.size()), tab_(m_, n + 1) {
    // Column n+1 is reserved for the phase-one artificial variable.
    basic_.resize(m_ + 1);
    nonbasic_.resize(n + 2);
    for (size_t i = 1; i <= m_; ++i) {
      basic_[i] = n + i - 1;
      tab_.at(i, 0) = *rows[i - 1].b;
      for (size_t j = 1; j <= n; ++j) tab_.at(i, j) = (*rows[i - 1].a)[j - 1];
    }
    for (size_t j = 1; j <= n; ++j) nonbasic_[j] = j - 1;
    nonbasic_[n + 1] = artificial();
    row_state_.assign(m_ + 1, Row::Slack);
    col_state_.assign(n + 2, Col::Live);
    col_state_[n + 1] = Col::Removed;
  }

  SimplexOutcome run(const IntVec& c, const mpq_class* stop_above) {
    SimplexOutcome out;
    pivot_in_free_variables();
    if (!phase_one()) return out;
    set_objective(c);
    for (size_t j = 1; j <= tab_.cols(); ++j)
      if (col_state_[j] == Col::Dead && sgn(tab_.at(0, j)) != 0) {
        out.status = LpStatus::Unbounded;
        return out;
      }
    mpz_class num, den;
    if (stop_above) {
      num = stop_above->get_num();
      den = stop_above->get_den();
    }
    auto exceeded = [&] { return stop_above && tab_.at(0, 0) * den > num * tab_.d(); };
    while (true) {
      if (exceeded()) {
        out.exceeded = true;
        break;
      }
      size_t s = entering();
      if (s == 0) break;
      size_t r = leaving(s);
      if (r == 0) {
        out.status = LpStatus::Unbounded;
        return out;
      }
      do_pivot(r, s);
    }
    out.status = LpStatus::Optimal;
    out.value = mpq_class(tab_.at(0, 0), tab_.d());
    out.value.canonicalize();
    out.y.assign(n_, 0);
    for (size_t i = 1; i <= m_; ++i)
      if (basic_[i] < n_) {
        out.y[basic_[i]] = mpq_class(tab_.at(i, 0), tab_.d());
        out.y[basic_[i]].canonicalize();
      }
    return out;
  }

 private:
  enum class Row { Slack, Free, Removed };
  enum class Col { Live, Dead, Removed };

  size_t artificial() const { return n_ + m_; }

  void do_pivot(size_t r, size_t s) {
    tab_.pivot(r, s);
    std::swap(basic_[r], nonbasic_[s]);
  }

  void pivot_in_free_variables() {
    for (size_t s = 1; s <= n_; ++s) {
      size_t r = 0;
      for (size_t i = 1; i <= m_ && r == 0; ++i)
        if (row_state_[i] == Row::Slack && sgn(tab_.at(i, s)) != 0) r = i;
      if (r == 0) {
        col_state_[s] = Col::Dead;
        continue;
      }
      do_pivot(r, s);
      row_state_[r] = Row::Free;
    }
  }

  // Single artificial variable with coefficient -1 in every constrained row.
  bool phase_one() {
    size_t worst = 0;
    for (size_t i = 1; i <= m_; ++i)
      if (row_state_[i] == Row::Slack && sgn(tab_.at(i, 0)) < 0 &&
          (worst == 0 || tab_.at(i, 0) < tab_.at(worst, 0)))
        worst = i;
    if (worst == 0) return true;
    const size_t a = n_ + 1;
    for (size_t j = 0; j <= tab_.cols(); ++j) tab_.at(0, j) = 0;
    for (size_t i = 1; i <= m_; ++i) tab_.at(i, a) = row_state_[i] == Row::Slack ? -tab_.d() : mpz_class(0);
    tab_.at(0, a) = tab_.d();
    col_state_[a] = Col::Live;
    do_pivot(worst, a);
    while (size_t s = entering()) do_pivot(leaving(s), s);
    if (sgn(tab_.at(0, 0)) < 0) return false;
    for (size_t r = 1; r <= m_; ++r) {
      if (basic_[r] != artificial()) continue;
      size_t s = 0;
      for (size_t j = 1; j <= tab_.cols() && s == 0; ++j)
        if (col_state_[j] == Col::Live && sgn(tab_.at(r, j)) != 0) s = j;
      if (s == 0) {
        row_state_[r] = Row::Removed;
      } else {
        do_pivot(r, s);
      }
    }
    for (size_t j = 1; j <= tab_.cols(); ++j)
      if (nonbasic_[j] == artificial()) col_state_[j] = Col::Removed;
    return true;
  }

  void set_objective(const IntVec& c) {
    auto cost = [&](size_t var) -> const mpz_class* { return var < n_ && sgn(c[var]) != 0 ? &c[var] : nullptr; };
    for (size_t j = 0; j <= tab_.cols(); ++j) {
      mpz_class v = 0;
      for (size_t i = 1; i <= m_; ++i)
        if (row_state_[i] != Row::Removed)
          if (const mpz_class* ci = cost(basic_[i])) v += *ci * tab_.at(i, j);
      if (j > 0)
        if (const mpz_class* cj = cost(nonbasic_[j])) v -= *cj * tab_.d();
      tab_.at(0, j) = v;
    }
  }

  // Bland: the lowest-index variable with a negative reduced cost.
  size_t entering() {
    size_t best = 0;
    for (size_t j = 1; j <= tab_.cols(); ++j)
      if (col_state_[j] == Col::Live && sgn(tab_.at(0, j)) < 0 && (best == 0 || nonbasic_[j] < nonbasic_[best]))
        best = j;
    return best;
  }

  size_t leaving(size_t s) {
    size_t best = 0;
    for (size_t i = 1; i <= m_; ++i) {
      if (row_state_[i] != Row::Slack || sgn(tab_.at(i, s)) <= 0) continue;
      if (best == 0) {
        best = i;
        continue;
      }
      int c = cmp(tab_.at(i, 0) * tab_.at(best, s), tab_.at(best, 0) * tab_.at(i, s));
      if (c < 0 || (c == 0 && basic_[i] < basic_[best])) best = i;
    }
    return best;
  }

  size_t n_, m_;
  Tableau tab_;
  std::vector<size_t> basic_, nonbasic_;
  std::vector<Row> row_state_;
  std::vector<Col> col_state_;
};

}  // namespace

SimplexOutcome simplex_max(size_t n, const std::vector<RowRef>& rows, const IntVec& c, const mpq_class* stop_above) {
  if (c.size() != n) throw DimensionMismatch("objective length");
  return Simplex(n, rows).run(c, stop_above);
}

std::optional<std::pair<IntVec, mpz_class>> reduce_row(const AffineParam& param, const RatVec& coeffs,
                                                       const Rational& rhs, bool* holds) {
  size_t k = param.free_dim();
  RatVec row(k + 1);
  bool vanishing = true;
  for (size_t j = 0; j < k; ++j) {
    mpq_class s = 0;
    for (size_t i = 0; i < param.ambient; ++i)
      if (!coeffs[i].is_zero() && !param.basis(i, j).is_zero()) s += coeffs[i].mpq() * param.basis(i, j).mpq();
    row[j] = Rational(s);
    vanishing = vanishing && row[j].is_zero();
  }
  row[k] = rhs - dot(coeffs, param.x0);
  if (vanishing) {
    if (holds) *holds = row[k].sign() >= 0;
    return std::nullopt;
  }
  IntVec ints = clear_denominators(row);
  make_primitive(ints);
  mpz_class b = ints.back();
  ints.pop_back();
  return std::make_pair(std::move(ints), std::move(b));
}

ReducedSystem reduce(const HRep& h) {
  ReducedSystem out;
  std::vector<RatVec> eq;
  RatVec eq_rhs;
  for (const auto& c : h.constraints)
    if (c.kind == Kind::EQ) {
      eq.push_back(c.coeffs);
      eq_rhs.push_back(c.rhs);
    }
  out.param = solve_affine(eq, eq_rhs, h.dim);
  if (!out.param.consistent) {
    out.infeasible = true;
    return out;
  }
  for (size_t i = 0; i < h.size(); ++i) {
    const auto& c = h.constraints[i];
    if (c.kind == Kind::EQ) continue;
    RatVec coeffs = c.coeffs;
    Rational rhs = c.rhs;
    if (c.kind == Kind::GE) {
      for (auto& x : coeffs) x = -x;
      rhs = -rhs;
    }
    bool holds = true;
    auto row = reduce_row(out.param, coeffs, rhs, &holds);
    if (!row) {
      if (holds) out.tautologies.push_back(i);
      else out.infeasible = true;
      continue;
    }
    out.a.push_back(std::move(row->first));
    out.b.push_back(std::move(row->second));
    out.source.push_back(i);
  }
  return out;
}

LpResult lp_solve(const RatVec& objective, const HRep& h, Sense sense) {
  if (objective.size() != h.dim) throw DimensionMismatch("objective length " + std::to_string(objective.size()) +
                                                         " in dimension " + std::to_string(h.dim));
  LpResult res;
  ReducedSystem red = reduce(h);
  if (red.infeasible) return res;
  // Objective over y: sign * (c.x0 + (cM) y).
  size_t k = red.n();
  RatVec cy(k);
  for (size_t j = 0; j < k; ++j) {
    mpq_class s = 0;
    for (size_t i = 0; i < h.dim; ++i) s += objective[i].mpq() * red.param.basis(i, j).mpq();
    cy[j] = Rational(sense == Sense::Max ? mpq_class(s) : mpq_class(-s));
  }
  mpz_class scale = denominator_lcm(cy);
  IntVec c(k);
  for (size_t j = 0; j < k; ++j) c[j] = cy[j].num() * (scale / cy[j].den());
  std::vector<RowRef> rows;
  for (size_t i = 0; i < red.a.size(); ++i) rows.push_back({&red.a[i], &red.b[i]});
  SimplexOutcome out = simplex_max(k, rows, c);
  res.status = out.status;
  if (out.status != LpStatus::Optimal) return res;
  RatVec y(k);
  for (size_t j = 0; j < k; ++j) y[j] = Rational(out.y[j]);
  res.point = red.param.lift(y);
  res.value = dot(objective, res.point);
  return res;
}

}  // namespace copoly
