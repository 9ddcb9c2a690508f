#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "copoly/hrep.hpp"

namespace copoly {

enum class Family { DC, UDC, DQ, CDQ, BIRKHOFF, ASM, TRANSPORT, ALT_TRANSPORT, UDC_MARGINS, CDQ_MARGINS, SAF, ASA };
enum class Space { GRID, DENSITY };
enum class Form { DEFINING, MINIMAL };

struct FamilySpec {
  Family family = Family::DC;
  size_t p = 0, q = 0;
  std::optional<RatVec> u, v;
  Space space = Space::GRID;
  Form form = Form::DEFINING;

  // e.g. "udc:3x4:grid:minimal", "asm:4", "transport:u=1,1,1:v=1,1,1:alt".
  static FamilySpec parse(std::string_view text);
  std::string str() const;
};

std::string family_name(Family f);

// Grid coordinates: c_ij at i*(q+1)+j for 0<=i<=p, 0<=j<=q.
inline size_t grid_index(size_t q, size_t i, size_t j) { return i * (q + 1) + j; }
// Density coordinates: x_ij at (i-1)*q+(j-1) for 1<=i<=p, 1<=j<=q.
inline size_t density_index(size_t q, size_t i, size_t j) { return (i - 1) * q + (j - 1); }

HRep build_dc(size_t p, size_t q, Space space, Form form);
HRep build_udc(size_t p, size_t q, Space space, Form form);
// MINIMAL needs min(p,q) >= 3, otherwise UnsupportedSize.
HRep build_dq(size_t p, size_t q, Space space, Form form);
HRep build_cdq(size_t p, size_t q, Space space, Form form);

// Throws MarginMismatch (sums differ) or InvalidArgument (nonpositive entry).
HRep build_transport(const RatVec& u, const RatVec& v, bool alternating);
HRep build_udc_margins(const RatVec& u, const RatVec& v);
HRep build_cdq_margins(const RatVec& u, const RatVec& v);

// Cumulative margins; throws NonIncreasingMargins.
HRep build_saf(const RatVec& u_cum, const RatVec& v_cum);
HRep build_asa(const RatVec& u_cum, const RatVec& v_cum);

// Dispatch on a spec. Falls back to certify_minimal where no closed form applies.
HRep build(const FamilySpec& spec);

// Rewrites density inequalities in grid coordinates through
// x_ij = pq (c_ij + c_{i-1,j-1} - c_{i,j-1} - c_{i-1,j}) and adds the given
// grid boundary equalities. Density equalities are dropped.
HRep pull_back_to_grid(const HRep& density, size_t p, size_t q, const HRep& boundary);

}  // namespace copoly
