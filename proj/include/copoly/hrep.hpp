#pragma once

#include <string>
#include <vector>

#include "copoly/matrix.hpp"
#include "copoly/rational.hpp"

namespace copoly {

enum class Kind { LE, GE, EQ };

struct LinConstraint {
  RatVec coeffs;
  Rational rhs;
  Kind kind = Kind::LE;

  // Rejects all-zero coefficient rows unless the row is 0 = 0.
  LinConstraint(RatVec coeffs, Kind kind, Rational rhs);

  bool satisfied_by(const RatVec& x) const;
  Rational lhs(const RatVec& x) const;
  bool active_at(const RatVec& x) const { return lhs(x) == rhs; }
};

struct HRep {
  size_t dim = 0;
  std::vector<LinConstraint> constraints;
  std::vector<std::string> labels;

  HRep() = default;
  explicit HRep(size_t dim) : dim(dim) {}

  void add(RatVec coeffs, Kind kind, Rational rhs, std::string label);
  size_t size() const { return constraints.size(); }
  size_t inequality_count() const;
  size_t equality_count() const { return size() - inequality_count(); }
  // Same constraints with the selected indices kept, in order.
  HRep subset(const std::vector<size_t>& keep) const;
};

struct VRep {
  size_t dim = 0;
  std::vector<RatVec> vertices;
};

struct Membership {
  bool inside = true;
  std::vector<std::string> violated;
};

// Exact check of every constraint. Throws DimensionMismatch.
Membership contains(const HRep& h, const RatVec& x);

}  // namespace copoly
