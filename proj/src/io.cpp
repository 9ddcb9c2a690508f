#include "copoly/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "copoly/error.hpp"

namespace copoly {

namespace {

Kind parse_kind(const std::string& s) {
  if (s == "LE") return Kind::LE;
  if (s == "GE") return Kind::GE;
  if (s == "EQ") return Kind::EQ;
  throw ParseError("unknown constraint kind '" + s + "'");
}

struct CddBlock {
  std::string type;
  std::vector<size_t> linearity;  // 1-based
  std::vector<RatVec> rows;
  std::vector<std::pair<Kind, std::string>> meta;
  long dim = -1;
};

CddBlock read_cdd(std::istream& is) {
  CddBlock b;
  std::string line;
  bool in_body = false, sized = false;
  size_t rows = 0, cols = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '*') {
      std::string word;
      if (first == "*" && (ls >> word)) {
        if (word == "row") {
          size_t idx;
          std::string kind, label;
          ls >> idx >> kind;
          std::getline(ls >> std::ws, label);
          b.meta.emplace_back(parse_kind(kind), label);
        } else if (word == "dim") {
          ls >> b.dim;
        }
      }
      continue;
    }
    if (!in_body) {
      if (first == "H-representation" || first == "V-representation") b.type = first;
      else if (first == "linearity") {
        size_t k;
        ls >> k;
        b.linearity.resize(k);
        for (auto& x : b.linearity) ls >> x;
      } else if (first == "begin") in_body = true;
      continue;
    }
    if (first == "end") break;
    if (!sized) {
      std::string number_type;
      rows = std::stoul(first);
      ls >> cols >> number_type;
      if (number_type != "rational" && number_type != "integer")
        throw ParseError("unsupported cdd number type '" + number_type + "'");
      sized = true;
      continue;
    }
    RatVec r{Rational::parse(first)};
    std::string tok;
    while (ls >> tok) r.push_back(Rational::parse(tok));
    if (r.size() != cols) throw ParseError("cdd row has " + std::to_string(r.size()) + " entries, expected " +
                                           std::to_string(cols));
    b.rows.push_back(std::move(r));
  }
  if (!sized || b.rows.size() != rows) throw ParseError("truncated cdd block");
  if (b.dim < 0) b.dim = static_cast<long>(cols) - 1;
  return b;
}

void write_row(std::ostream& os, const Rational& head, const RatVec& tail, bool negate) {
  os << head.str();
  for (const auto& x : tail) os << ' ' << (negate ? (-x).str() : x.str());
  os << '\n';
}

}  // namespace

std::string kind_name(Kind k) { return k == Kind::LE ? "LE" : k == Kind::GE ? "GE" : "EQ"; }

void write_hrep_cdd(std::ostream& os, const HRep& h) {
  os << "* dim " << h.dim << '\n';
  for (size_t i = 0; i < h.size(); ++i)
    os << "* row " << i + 1 << ' ' << kind_name(h.constraints[i].kind) << ' ' << h.labels[i] << '\n';
  os << "H-representation\n";
  if (h.equality_count() > 0) {
    os << "linearity " << h.equality_count();
    for (size_t i = 0; i < h.size(); ++i)
      if (h.constraints[i].kind == Kind::EQ) os << ' ' << i + 1;
    os << '\n';
  }
  os << "begin\n" << h.size() << ' ' << h.dim + 1 << " rational\n";
  for (const auto& c : h.constraints) {
    if (c.kind == Kind::GE) write_row(os, -c.rhs, c.coeffs, false);
    else write_row(os, c.rhs, c.coeffs, true);
  }
  os << "end\n";
}

HRep read_hrep_cdd(std::istream& is) {
  CddBlock b = read_cdd(is);
  if (b.type != "H-representation") throw ParseError("expected an H-representation");
  const bool meta = b.meta.size() == b.rows.size();
  HRep h(static_cast<size_t>(b.dim));
  std::vector<bool> linear(b.rows.size(), false);
  for (size_t k : b.linearity) linear.at(k - 1) = true;
  for (size_t i = 0; i < b.rows.size(); ++i) {
    const RatVec& r = b.rows[i];
    Kind kind = meta ? b.meta[i].first : (linear[i] ? Kind::EQ : Kind::LE);
    RatVec a(r.begin() + 1, r.end());
    Rational rhs = r[0];
    if (kind == Kind::GE) rhs = -rhs;
    else
      for (auto& x : a) x = -x;
    h.add(std::move(a), kind, rhs, meta ? b.meta[i].second : "r" + std::to_string(i + 1));
  }
  return h;
}

void write_vrep_cdd(std::ostream& os, const VRep& v) {
  os << "V-representation\nbegin\n" << v.vertices.size() << ' ' << v.dim + 1 << " rational\n";
  for (const auto& x : v.vertices) write_row(os, Rational(1), x, false);
  os << "end\n";
}

VRep read_vrep_cdd(std::istream& is) {
  CddBlock b = read_cdd(is);
  if (b.type != "V-representation") throw ParseError("expected a V-representation");
  VRep v;
  v.dim = static_cast<size_t>(b.dim);
  for (const auto& r : b.rows) {
    if (r[0] != Rational(1)) throw ParseError("only vertices (leading 1) are supported, not rays");
    v.vertices.emplace_back(r.begin() + 1, r.end());
  }
  return v;
}

namespace {

nlohmann::json vec_json(const RatVec& v) {
  auto a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

RatVec vec_from(const nlohmann::json& a) {
  RatVec v;
  for (const auto& x : a) v.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<long>()));
  return v;
}

}  // namespace

nlohmann::json to_json(const HRep& h) {
  nlohmann::json j{{"type", "hrep"}, {"dim", h.dim}, {"constraints", nlohmann::json::array()}};
  for (size_t i = 0; i < h.size(); ++i) {
    const auto& c = h.constraints[i];
    j["constraints"].push_back(
        {{"label", h.labels[i]}, {"kind", kind_name(c.kind)}, {"coeffs", vec_json(c.coeffs)}, {"rhs", c.rhs.str()}});
  }
  return j;
}

nlohmann::json to_json(const VRep& v) {
  nlohmann::json j{{"type", "vrep"}, {"dim", v.dim}, {"vertices", nlohmann::json::array()}};
  for (const auto& x : v.vertices) j["vertices"].push_back(vec_json(x));
  return j;
}

nlohmann::json to_json(const RatMatrix& m) {
  auto rows = nlohmann::json::array();
  for (size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i)));
  return rows;
}

HRep hrep_from_json(const nlohmann::json& j) {
  try {
    HRep h(j.at("dim").get<size_t>());
    for (const auto& c : j.at("constraints"))
      h.add(vec_from(c.at("coeffs")), parse_kind(c.at("kind").get<std::string>()),
            Rational::parse(c.at("rhs").get<std::string>()), c.value("label", ""));
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad H-rep JSON: ") + e.what());
  }
}

VRep vrep_from_json(const nlohmann::json& j) {
  try {
    VRep v;
    v.dim = j.at("dim").get<size_t>();
    for (const auto& x : j.at("vertices")) v.vertices.push_back(vec_from(x));
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad V-rep JSON: ") + e.what());
  }
}

RatMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    std::vector<RatVec> rows;
    for (const auto& r : j) rows.push_back(vec_from(r));
    return RatMatrix::from_rows(rows);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad matrix JSON: ") + e.what());
  }
}

HRep read_hrep(std::istream& is) {
  is >> std::ws;
  if (is.peek() == '{') {
    try {
      return hrep_from_json(nlohmann::json::parse(is));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what());
    }
  }
  return read_hrep_cdd(is);
}

VRep read_vrep(std::istream& is) {
  is >> std::ws;
  if (is.peek() == '{') {
    try {
      return vrep_from_json(nlohmann::json::parse(is));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what());
    }
  }
  return read_vrep_cdd(is);
}

}  // namespace copoly
