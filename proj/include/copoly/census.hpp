#pragma once

#include <iosfwd>
#include <vector>

#include "copoly/families.hpp"
#include "copoly/polytope.hpp"
#include "copoly/transforms.hpp"

namespace copoly {

struct VertexCensus {
  size_t p = 0;
  Family family = Family::UDC;
  size_t total = 0;
  size_t decomposable = 0;
  size_t indecomposable = 0;
};

// Density-space vertices of the square family, enumerated once per (family, p)
// and kept for the life of the process.
const VRep& square_vertices(Family family, size_t p);

// One entry per p in 1..p_max. family is UDC or CDQ, p_max <= 5.
std::vector<VertexCensus> run_census(Family family, size_t p_max);

// Coefficient-wise check, through x^degree, of D = 1/(1 - ID) and
// V D = D^2 + D - 1 with D_0 = 1, ID_0 = 0, V_0 = 1. Throws InsufficientData.
bool gf_check(const std::vector<VertexCensus>& census, size_t degree);

// V = 1/(1 - ID), the relation that holds when every vertex factors uniquely
// into indecomposable blocks and every such sum is again a vertex.
bool gf_check_unique_factorization(const std::vector<VertexCensus>& census, size_t degree);

// One cell of the reference vertex-count table for UDC, CDQ, DQ and DC over
// (p,q) in {(3,3),(3,4),(3,5),(4,4),(4,5),(5,5)}.
struct CountCell {
  Family family = Family::UDC;
  size_t p = 0, q = 0;
  size_t expected = 0;
  size_t computed = 0;
  double seconds = 0;
};

// All 24 cells with computed left at zero, family-major.
std::vector<CountCell> vertex_count_cells();
// Enumerates the density-space system and fills computed and seconds.
void compute_cell(CountCell& cell);

void write_census_csv(std::ostream& out, const std::vector<VertexCensus>& census);

}  // namespace copoly
