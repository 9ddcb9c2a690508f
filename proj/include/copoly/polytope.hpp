#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "copoly/hrep.hpp"
#include "copoly/lp.hpp"

namespace copoly {

enum class InsertionOrder { ByLabel, AsGiven };

// Vertices sorted lexicographically. Throws Unbounded or EmptyPolytope.
VRep enumerate_vertices(const HRep& h, InsertionOrder order = InsertionOrder::ByLabel);

struct MinimalResult {
  HRep minimal;  // equalities followed by the surviving inequalities
  std::vector<std::string> removed;
};

// Drops, one at a time in input order, every inequality implied by the
// inequalities still kept. Throws EmptyPolytope.
MinimalResult certify_minimal(const HRep& h);

// Throws NotMember when x violates h.
bool is_vertex(const HRep& h, const RatVec& x);

// Convex combination of all vertices with integer weights drawn from
// 1..100, so the result is exact and reproducible for a given seed.
RatVec random_convex_combination(const VRep& v, std::mt19937_64& rng);

// Throws EmptyPolytope.
size_t dimension(const HRep& h);

// Inequalities of h as primitive integer rows over the free coordinates of
// `param`, so two systems over the same affine hull can be compared as sets.
using CanonicalRow = std::vector<mpz_class>;
std::set<CanonicalRow> canonical_inequalities(const HRep& h, const AffineParam& param);

// Each inequality's canonical row, or empty for a vanishing one.
std::vector<CanonicalRow> canonical_rows(const HRep& h, const AffineParam& param);

AffineParam equality_param(const HRep& h);

// Vertices with all labels of tight inequalities, for facet structure queries.
std::vector<std::vector<size_t>> vertices_on_inequalities(const HRep& h, const VRep& v);

}  // namespace copoly
