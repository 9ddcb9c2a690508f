#include "copoly/families.hpp"

#include <functional>

#include "copoly/error.hpp"
#include "copoly/polytope.hpp"

namespace copoly {

namespace {

std::string tag(const std::string& name, size_t i, size_t j) {
  return name + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
std::string tag(const std::string& name, size_t i) { return name + "(" + std::to_string(i) + ")"; }

void require_size(size_t p, size_t q) {
  if (p < 1 || q < 1) throw InvalidArgument("grid sizes must be positive");
}

// ---------------------------------------------------------------- grid space

struct Grid {
  size_t p, q;
  HRep h;
  Grid(size_t p, size_t q) : p(p), q(q), h((p + 1) * (q + 1)) {}
  size_t at(size_t i, size_t j) const { return grid_index(q, i, j); }
  RatVec zero() const { return RatVec(h.dim); }

  // Boundary values c_0j = c_i0 = 0, c_pj = top(j), c_iq = right(i), one
  // equality per boundary cell.
  void boundary(const std::string& name, const std::function<Rational(size_t)>& right,
                const std::function<Rational(size_t)>& top) {
    for (size_t i = 0; i <= p; ++i)
      for (size_t j = 0; j <= q; ++j) {
        if (i != 0 && j != 0 && i != p && j != q) continue;
        Rational value = (i == 0 || j == 0) ? Rational(0) : (i == p ? top(j) : right(i));
        RatVec c = zero();
        c[at(i, j)] = 1;
        h.add(std::move(c), Kind::EQ, value, tag(name, i, j));
      }
  }
  void uniform_boundary(const std::string& name) {
    boundary(name, [&](size_t i) { return rat_normalize(i, p); }, [&](size_t j) { return rat_normalize(j, q); });
  }

  // c_ij + c_{i-1,j-1} - c_{i,j-1} - c_{i-1,j} >= 0 for i in [p], j in [q].
  void supermodular(const std::string& name) {
    for (size_t i = 1; i <= p; ++i)
      for (size_t j = 1; j <= q; ++j) h.add(mixed(i, j), Kind::GE, 0, tag(name, i, j));
  }
  RatVec mixed(size_t i, size_t j) const {
    RatVec c = zero();
    c[at(i, j)] += 1;
    c[at(i - 1, j - 1)] += 1;
    c[at(i, j - 1)] -= 1;
    c[at(i - 1, j)] -= 1;
    return c;
  }

  // Convexity of horizontal sections (tag a) and vertical sections (tag b).
  void convexity(const std::string& a, const std::string& b) {
    for (size_t i = 1; i + 1 <= p; ++i)
      for (size_t j = 0; j + 2 <= q; ++j) {
        RatVec c = zero();
        c[at(i, j)] += 1;
        c[at(i, j + 2)] += 1;
        c[at(i, j + 1)] -= 2;
        h.add(std::move(c), Kind::GE, 0, tag(a, i, j));
      }
    for (size_t j = 1; j + 1 <= q; ++j)
      for (size_t i = 0; i + 2 <= p; ++i) {
        RatVec c = zero();
        c[at(i, j)] += 1;
        c[at(i + 2, j)] += 1;
        c[at(i + 1, j)] -= 2;
        h.add(std::move(c), Kind::GE, 0, tag(b, i, j));
      }
  }

  // 0 <= c_{i+1,j} - c_ij <= 1/p and 0 <= c_{i,j+1} - c_ij <= 1/q.
  void quasi_monotone() {
    for (size_t i = 0; i + 1 <= p; ++i)
      for (size_t j = 1; j <= q; ++j) {
        RatVec c = zero();
        c[at(i + 1, j)] = 1;
        c[at(i, j)] = -1;
        h.add(c, Kind::GE, 0, tag("q2a_lo", i, j));
        h.add(c, Kind::LE, rat_normalize(1, p), tag("q2a_hi", i, j));
      }
    for (size_t i = 1; i <= p; ++i)
      for (size_t j = 0; j + 1 <= q; ++j) {
        RatVec c = zero();
        c[at(i, j + 1)] = 1;
        c[at(i, j)] = -1;
        h.add(c, Kind::GE, 0, tag("q2b_lo", i, j));
        h.add(c, Kind::LE, rat_normalize(1, q), tag("q2b_hi", i, j));
      }
  }

  // c_11 >= 0 and c_{p-1,q-1} >= ((p-1)(q-1)-1)/(pq).
  void corner_bounds(const std::string& name) {
    RatVec c = zero();
    c[at(1, 1)] = 1;
    h.add(c, Kind::GE, 0, tag(name, 1, 1));
    c = zero();
    c[at(p - 1, q - 1)] = 1;
    long pp = static_cast<long>(p), qq = static_cast<long>(q);
    h.add(c, Kind::GE, rat_normalize((pp - 1) * (qq - 1) - 1, pp * qq), tag(name, p - 1, q - 1));
  }
};

// ------------------------------------------------------------- density space

struct Density {
  size_t p, q;
  HRep h;
  Density(size_t p, size_t q) : p(p), q(q), h(p * q) {}
  size_t at(size_t i, size_t j) const { return density_index(q, i, j); }
  RatVec zero() const { return RatVec(h.dim); }

  void margins(const RatVec& u, const RatVec& v) {
    for (size_t i = 1; i <= p; ++i) {
      RatVec c = zero();
      for (size_t j = 1; j <= q; ++j) c[at(i, j)] = 1;
      h.add(std::move(c), Kind::EQ, u[i - 1], tag("rowsum", i));
    }
    for (size_t j = 1; j <= q; ++j) {
      RatVec c = zero();
      for (size_t i = 1; i <= p; ++i) c[at(i, j)] = 1;
      h.add(std::move(c), Kind::EQ, v[j - 1], tag("colsum", j));
    }
  }
  void uniform_margins() { margins(RatVec(p, Rational(static_cast<long>(q))), RatVec(q, Rational(static_cast<long>(p)))); }

  void nonneg(const std::string& name, size_t i, size_t j) {
    RatVec c = zero();
    c[at(i, j)] = 1;
    h.add(std::move(c), Kind::GE, 0, tag(name, i, j));
  }
  void all_nonneg() {
    for (size_t i = 1; i <= p; ++i)
      for (size_t j = 1; j <= q; ++j) nonneg("nonneg", i, j);
  }

  // Sum of x_{l,j} for l in [lo, hi] (column j) or x_{i,h} for h in [lo, hi] (row i).
  RatVec column_run(size_t j, size_t lo, size_t hi) const {
    RatVec c = zero();
    for (size_t l = lo; l <= hi; ++l) c[at(l, j)] = 1;
    return c;
  }
  RatVec row_run(size_t i, size_t lo, size_t hi) const {
    RatVec c = zero();
    for (size_t k = lo; k <= hi; ++k) c[at(i, k)] = 1;
    return c;
  }

  // Partial sums bounded by the margins.
  void alternating(const RatVec& u, const RatVec& v) {
    for (size_t j = 1; j <= q; ++j)
      for (size_t i = 1; i < p; ++i) {
        h.add(column_run(j, 1, i), Kind::GE, 0, tag("asm2lo", i, j));
        h.add(column_run(j, 1, i), Kind::LE, v[j - 1], tag("asm2hi", i, j));
      }
    for (size_t i = 1; i <= p; ++i)
      for (size_t j = 1; j < q; ++j) {
        h.add(row_run(i, 1, j), Kind::GE, 0, tag("asm3lo", i, j));
        h.add(row_run(i, 1, j), Kind::LE, u[i - 1], tag("asm3hi", i, j));
      }
  }

  // Partial column sums increase to the right, partial row sums downwards.
  void monotone_partial_sums(const std::string& a, const std::string& b) {
    for (size_t i = 1; i < p; ++i)
      for (size_t j = 1; j < q; ++j) {
        RatVec c = zero();
        for (size_t l = 1; l <= i; ++l) {
          c[at(l, j + 1)] += 1;
          c[at(l, j)] -= 1;
        }
        h.add(std::move(c), Kind::GE, 0, tag(a, i, j));
      }
    for (size_t i = 1; i < p; ++i)
      for (size_t j = 1; j < q; ++j) {
        RatVec c = zero();
        for (size_t k = 1; k <= j; ++k) {
          c[at(i + 1, k)] += 1;
          c[at(i, k)] -= 1;
        }
        h.add(std::move(c), Kind::GE, 0, tag(b, i, j));
      }
  }
};

void check_margins(const RatVec& u, const RatVec& v) {
  if (u.empty() || v.empty()) throw InvalidArgument("margins must be nonempty");
  Rational su, sv;
  for (const auto& x : u) {
    if (x.sign() <= 0) throw InvalidArgument("margins must be positive");
    su += x;
  }
  for (const auto& x : v) {
    if (x.sign() <= 0) throw InvalidArgument("margins must be positive");
    sv += x;
  }
  if (su != sv) throw MarginMismatch("row margins sum to " + su.str() + ", column margins to " + sv.str());
}

HRep minimal_of(const HRep& h) { return certify_minimal(h).minimal; }

// Density system of the (q x p) family read as a (p x q) system: x_ij takes
// the role of x_ji, and labels swap row/column tags and index order.
std::string transpose_label(const std::string& label) {
  auto open = label.find('(');
  std::string name = label.substr(0, open), args = label.substr(open + 1, label.size() - open - 2);
  static const std::pair<const char*, const char*> swaps[] = {
      {"rowsum", "colsum"}, {"colsum", "rowsum"}, {"a2+", "a3+"}, {"a3+", "a2+"},
      {"a2-", "a3-"},       {"a3-", "a2-"},       {"asm2lo", "asm3lo"}, {"asm3lo", "asm2lo"},
      {"asm2hi", "asm3hi"}, {"asm3hi", "asm2hi"}};
  for (const auto& [from, to] : swaps)
    if (name == from) {
      name = to;
      break;
    }
  auto comma = args.find(',');
  if (comma != std::string::npos) args = args.substr(comma + 1) + "," + args.substr(0, comma);
  return name + "(" + args + ")";
}

HRep transpose_density(const HRep& h, size_t p_old, size_t q_old) {
  HRep out(h.dim);
  for (size_t k = 0; k < h.size(); ++k) {
    const auto& c = h.constraints[k];
    RatVec coeffs(h.dim);
    for (size_t i = 1; i <= p_old; ++i)
      for (size_t j = 1; j <= q_old; ++j) coeffs[density_index(p_old, j, i)] = c.coeffs[density_index(q_old, i, j)];
    out.add(std::move(coeffs), c.kind, c.rhs, transpose_label(h.labels[k]));
  }
  return out;
}

// Minimal system of ASM_{p,q} for 3 <= p <= q.
HRep asm_minimal(size_t p, size_t q) {
  Density d(p, q);
  d.uniform_margins();
  for (auto [i, j] : {std::pair{size_t{1}, size_t{1}}, {1, q}, {p, 1}, {p, q}}) d.nonneg("a1", i, j);
  if (p == q) {
    for (size_t j = 2; j < q; ++j)
      for (size_t i = 1; i + 2 <= p; ++i) d.h.add(d.column_run(j, 1, i), Kind::GE, 0, tag("a2+", i, j));
    for (size_t j = 2; j < q; ++j)
      for (size_t i = 2; i < p; ++i) d.h.add(d.column_run(j, i + 1, p), Kind::GE, 0, tag("a2-", i, j));
    for (size_t i = 2; i < p; ++i)
      for (size_t j = 1; j + 2 <= q; ++j) d.h.add(d.row_run(i, 1, j), Kind::GE, 0, tag("a3+", i, j));
    for (size_t i = 2; i < p; ++i)
      for (size_t j = 2; j < q; ++j) d.h.add(d.row_run(i, j + 1, q), Kind::GE, 0, tag("a3-", i, j));
    return d.h;
  }
  const size_t k = q / p;
  for (size_t j = 2; j < q; ++j)
    for (size_t i = 1; i < p; ++i) {
      d.h.add(d.column_run(j, 1, i), Kind::GE, 0, tag("a2+", i, j));
      d.h.add(d.column_run(j, i + 1, p), Kind::GE, 0, tag("a2-", i, j));
    }
  for (size_t i = 2; i < p; ++i) {
    for (size_t j = 1; j + k + 1 <= q; ++j) d.h.add(d.row_run(i, 1, j), Kind::GE, 0, tag("a3+", i, j));
    for (size_t j = k + 1; j < q; ++j) d.h.add(d.row_run(i, j + 1, q), Kind::GE, 0, tag("a3-", i, j));
  }
  return d.h;
}

Grid uniform_grid(size_t p, size_t q, const std::string& boundary_tag) {
  Grid g(p, q);
  g.uniform_boundary(boundary_tag);
  return g;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::DC: return "dc";
    case Family::UDC: return "udc";
    case Family::DQ: return "dq";
    case Family::CDQ: return "cdq";
    case Family::BIRKHOFF: return "birkhoff";
    case Family::ASM: return "asm";
    case Family::TRANSPORT: return "transport";
    case Family::ALT_TRANSPORT: return "alt_transport";
    case Family::UDC_MARGINS: return "udc_margins";
    case Family::CDQ_MARGINS: return "cdq_margins";
    case Family::SAF: return "saf";
    case Family::ASA: return "asa";
  }
  return "?";
}

HRep pull_back_to_grid(const HRep& density, size_t p, size_t q, const HRep& boundary) {
  HRep out = boundary;
  const Rational scale(static_cast<long>(p * q));
  Grid g(p, q);
  for (size_t k = 0; k < density.size(); ++k) {
    const auto& c = density.constraints[k];
    if (c.kind == Kind::EQ) continue;
    RatVec coeffs = g.zero();
    for (size_t i = 1; i <= p; ++i)
      for (size_t j = 1; j <= q; ++j) {
        const Rational& a = c.coeffs[density_index(q, i, j)];
        if (a.is_zero()) continue;
        RatVec m = g.mixed(i, j);
        for (size_t t = 0; t < m.size(); ++t)
          if (!m[t].is_zero()) coeffs[t] += scale * a * m[t];
      }
    out.add(std::move(coeffs), c.kind, c.rhs, density.labels[k]);
  }
  return out;
}

HRep build_dc(size_t p, size_t q, Space space, Form form) {
  require_size(p, q);
  HRep h;
  if (space == Space::GRID) {
    Grid g = uniform_grid(p, q, "c1");
    g.supermodular("c2");
    h = g.h;
  } else {
    Density d(p, q);
    d.uniform_margins();
    d.all_nonneg();
    h = d.h;
  }
  return form == Form::MINIMAL ? minimal_of(h) : h;
}

HRep build_udc(size_t p, size_t q, Space space, Form form) {
  require_size(p, q);
  const bool closed_form = form == Form::MINIMAL && p >= 3 && q >= 3;
  if (space == Space::GRID) {
    Grid g = uniform_grid(p, q, "c1");
    if (!closed_form) {
      g.supermodular("c2");
      g.convexity("d3a", "d3b");
      return form == Form::MINIMAL ? minimal_of(g.h) : g.h;
    }
    g.corner_bounds("d1");
    for (size_t i = 1; i + 2 <= p; ++i)
      for (size_t j = 1; j + 2 <= q; ++j) {
        if ((i == 1 && j == 1) || (i == p - 2 && j == q - 2)) continue;
        // supermodularity of the cell with upper-right corner (i+1, j+1)
        g.h.add(g.mixed(i + 1, j + 1), Kind::GE, 0, tag("d2", i, j));
      }
    g.convexity("d3a", "d3b");
    return g.h;
  }
  Density d(p, q);
  d.uniform_margins();
  if (!closed_form) {
    d.all_nonneg();
    d.monotone_partial_sums("b3a", "b3b");
    return form == Form::MINIMAL ? minimal_of(d.h) : d.h;
  }
  d.nonneg("b1", 1, 1);
  d.nonneg("b1", p, q);
  for (size_t i = 1; i + 2 <= p; ++i)
    for (size_t j = 1; j + 2 <= q; ++j) {
      if ((i == 1 && j == 1) || (i == p - 2 && j == q - 2)) continue;
      d.nonneg("b2", i + 1, j + 1);
      d.h.labels.back() = tag("b2", i, j);
    }
  d.monotone_partial_sums("b3a", "b3b");
  return d.h;
}

HRep build_dq(size_t p, size_t q, Space space, Form form) {
  require_size(p, q);
  if (form == Form::MINIMAL) {
    if (p < 3 || q < 3) throw UnsupportedSize("closed-form minimal system needs min(p,q) >= 3");
    HRep dens = p <= q ? asm_minimal(p, q) : transpose_density(asm_minimal(q, p), q, p);
    if (space == Space::DENSITY) return dens;
    return pull_back_to_grid(dens, p, q, uniform_grid(p, q, "q1").h);
  }
  if (space == Space::GRID) {
    Grid g = uniform_grid(p, q, "q1");
    g.quasi_monotone();
    return g.h;
  }
  Density d(p, q);
  d.uniform_margins();
  d.alternating(RatVec(p, Rational(static_cast<long>(q))), RatVec(q, Rational(static_cast<long>(p))));
  return d.h;
}

HRep build_cdq(size_t p, size_t q, Space space, Form form) {
  require_size(p, q);
  const bool closed_form = form == Form::MINIMAL && p >= 3 && q >= 3;
  if (space == Space::GRID) {
    Grid g = uniform_grid(p, q, "q1");
    if (closed_form) {
      g.corner_bounds("v1");
      g.convexity("v3a", "v3b");
      return g.h;
    }
    g.quasi_monotone();
    g.convexity("v3a", "v3b");
    return form == Form::MINIMAL ? minimal_of(g.h) : g.h;
  }
  Density d(p, q);
  d.uniform_margins();
  if (closed_form) {
    d.nonneg("a1", 1, 1);
    d.nonneg("a1", p, q);
    d.monotone_partial_sums("a3a", "a3b");
    return d.h;
  }
  d.alternating(RatVec(p, Rational(static_cast<long>(q))), RatVec(q, Rational(static_cast<long>(p))));
  d.monotone_partial_sums("a3a", "a3b");
  return form == Form::MINIMAL ? minimal_of(d.h) : d.h;
}

HRep build_transport(const RatVec& u, const RatVec& v, bool alternating) {
  check_margins(u, v);
  Density d(u.size(), v.size());
  d.margins(u, v);
  if (alternating) d.alternating(u, v);
  else d.all_nonneg();
  return d.h;
}

HRep build_udc_margins(const RatVec& u, const RatVec& v) {
  check_margins(u, v);
  Density d(u.size(), v.size());
  d.margins(u, v);
  d.all_nonneg();
  d.monotone_partial_sums("b3a", "b3b");
  return d.h;
}

HRep build_cdq_margins(const RatVec& u, const RatVec& v) {
  check_margins(u, v);
  Density d(u.size(), v.size());
  d.margins(u, v);
  d.alternating(u, v);
  d.monotone_partial_sums("a3a", "a3b");
  return d.h;
}

namespace {

Grid aggregation_grid(const RatVec& u_cum, const RatVec& v_cum) {
  const size_t p = u_cum.size(), q = v_cum.size();
  if (p == 0 || q == 0) throw InvalidArgument("cumulative margins must be nonempty");
  const Rational total(static_cast<long>(p * q));
  for (const RatVec* m : {&u_cum, &v_cum}) {
    Rational prev = 0;
    for (const auto& x : *m) {
      if (!(x > prev)) throw NonIncreasingMargins("cumulative margins must increase strictly from 0");
      prev = x;
    }
    if (prev != total) throw NonIncreasingMargins("cumulative margins must end at pq = " + total.str());
  }
  Grid g(p, q);
  g.boundary("AF1", [&](size_t i) { return u_cum[i - 1] / total; }, [&](size_t j) { return v_cum[j - 1] / total; });
  return g;
}

}  // namespace

HRep build_saf(const RatVec& u_cum, const RatVec& v_cum) {
  Grid g = aggregation_grid(u_cum, v_cum);
  g.supermodular("AF2a");
  return g.h;
}

HRep build_asa(const RatVec& u_cum, const RatVec& v_cum) {
  Grid g = aggregation_grid(u_cum, v_cum);
  const size_t p = g.p, q = g.q;
  for (size_t i1 = 0; i1 <= p; ++i1)
    for (size_t i2 = i1 + 1; i2 <= p; ++i2)
      for (size_t j1 = 0; j1 <= q; ++j1)
        for (size_t j2 = j1 + 1; j2 <= q; ++j2) {
          if (!(i1 == 0 || i2 == p || j1 == 0 || j2 == q)) continue;
          RatVec c = g.zero();
          c[g.at(i1, j1)] += 1;
          c[g.at(i2, j2)] += 1;
          c[g.at(i1, j2)] -= 1;
          c[g.at(i2, j1)] -= 1;
          g.h.add(std::move(c), Kind::GE, 0,
                  "AF2b(" + std::to_string(i1) + "," + std::to_string(j1) + ";" + std::to_string(i2) + "," +
                      std::to_string(j2) + ")");
        }
  return g.h;
}

HRep build(const FamilySpec& s) {
  auto margins = [&] {
    if (!s.u || !s.v) throw InvalidArgument(family_name(s.family) + " needs margins u=... and v=...");
  };
  auto dq = [&](Space space) {
    try {
      return build_dq(s.p, s.q, space, s.form);
    } catch (const UnsupportedSize&) {
      return minimal_of(build_dq(s.p, s.q, space, Form::DEFINING));
    }
  };
  auto finish = [&](HRep h) { return s.form == Form::MINIMAL ? minimal_of(h) : h; };
  switch (s.family) {
    case Family::DC: return build_dc(s.p, s.q, s.space, s.form);
    case Family::UDC: return build_udc(s.p, s.q, s.space, s.form);
    case Family::DQ: return dq(s.space);
    case Family::CDQ: return build_cdq(s.p, s.q, s.space, s.form);
    case Family::BIRKHOFF: return build_dc(s.p, s.q, Space::DENSITY, s.form);
    case Family::ASM: return dq(Space::DENSITY);
    case Family::TRANSPORT: margins(); return finish(build_transport(*s.u, *s.v, false));
    case Family::ALT_TRANSPORT: margins(); return finish(build_transport(*s.u, *s.v, true));
    case Family::UDC_MARGINS: margins(); return finish(build_udc_margins(*s.u, *s.v));
    case Family::CDQ_MARGINS: margins(); return finish(build_cdq_margins(*s.u, *s.v));
    case Family::SAF:
    case Family::ASA:
      margins();
      if (s.form == Form::MINIMAL) throw InvalidArgument("aggregation-function sets have no minimal form");
      return s.family == Family::SAF ? build_saf(*s.u, *s.v) : build_asa(*s.u, *s.v);
  }
  throw InvalidArgument("unknown family");
}

}  // namespace copoly
