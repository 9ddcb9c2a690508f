#include "copoly/hrep.hpp"

#include "copoly/error.hpp"

namespace copoly {

LinConstraint::LinConstraint(RatVec c, Kind k, Rational r) : coeffs(std::move(c)), rhs(std::move(r)), kind(k) {
  bool all_zero = true;
  for (const auto& a : coeffs) all_zero = all_zero && a.is_zero();
  if (all_zero && !(kind == Kind::EQ && rhs.is_zero()))
    throw InvalidArgument("constraint with all-zero coefficients");
}

Rational LinConstraint::lhs(const RatVec& x) const { return dot(coeffs, x); }

bool LinConstraint::satisfied_by(const RatVec& x) const {
  Rational v = lhs(x);
  switch (kind) {
    case Kind::LE: return v <= rhs;
    case Kind::GE: return v >= rhs;
    case Kind::EQ: return v == rhs;
  }
  return false;
}

void HRep::add(RatVec coeffs, Kind kind, Rational rhs, std::string label) {
  if (coeffs.size() != dim) throw DimensionMismatch("constraint length " + std::to_string(coeffs.size()) +
                                                    " in dimension " + std::to_string(dim));
  constraints.emplace_back(std::move(coeffs), kind, std::move(rhs));
  labels.push_back(std::move(label));
}

size_t HRep::inequality_count() const {
  size_t n = 0;
  for (const auto& c : constraints) n += c.kind != Kind::EQ;
  return n;
}

HRep HRep::subset(const std::vector<size_t>& keep) const {
  HRep out(dim);
  for (size_t i : keep) {
    out.constraints.push_back(constraints.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

Membership contains(const HRep& h, const RatVec& x) {
  if (x.size() != h.dim) throw DimensionMismatch("point has length " + std::to_string(x.size()) +
                                                 ", polytope dimension " + std::to_string(h.dim));
  Membership m;
  for (size_t i = 0; i < h.size(); ++i)
    if (!h.constraints[i].satisfied_by(x)) {
      m.inside = false;
      m.violated.push_back(h.labels[i]);
    }
  return m;
}

}  // namespace copoly
