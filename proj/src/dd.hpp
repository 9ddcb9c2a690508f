#pragma once

#include <gmpxx.h>

#include <vector>

#include "copoly/lp.hpp"

namespace copoly::detail {

// Extreme rays of {(y0, y) : y0 >= 0, b_i y0 - a_i y >= 0} by the double
// description method, with the rows of `red` inserted in `order`. Returns the
// points y / y0 of the rays with y0 > 0; throws Unbounded if a ray has y0 = 0.
std::vector<std::vector<mpq_class>> dd_vertices(const ReducedSystem& red, const std::vector<size_t>& order);

}  // namespace copoly::detail
