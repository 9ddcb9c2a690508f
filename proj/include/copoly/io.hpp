#pragma once

#include <iosfwd>
#include <string>

#include "copoly/hrep.hpp"
#include "copoly/transforms.hpp"
#include "json.hpp"

namespace copoly {

// cdd text formats. H-rep rows are "b -a" for a.x <= b; equalities are
// listed on the linearity line. Kind and label of each row ride along in
// "* row" comments so that reading back reproduces the object exactly.
void write_hrep_cdd(std::ostream& os, const HRep& h);
HRep read_hrep_cdd(std::istream& is);
void write_vrep_cdd(std::ostream& os, const VRep& v);
VRep read_vrep_cdd(std::istream& is);

nlohmann::json to_json(const HRep& h);
nlohmann::json to_json(const VRep& v);
nlohmann::json to_json(const RatMatrix& m);
HRep hrep_from_json(const nlohmann::json& j);
VRep vrep_from_json(const nlohmann::json& j);
RatMatrix matrix_from_json(const nlohmann::json& j);

// Reads either format, deciding by the first non-blank character.
HRep read_hrep(std::istream& is);
VRep read_vrep(std::istream& is);

std::string kind_name(Kind k);

}  // namespace copoly
