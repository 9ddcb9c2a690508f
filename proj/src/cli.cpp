#include "copoly/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "copoly/census.hpp"
#include "copoly/copula_ops.hpp"
#include "copoly/error.hpp"
#include "copoly/families.hpp"
#include "copoly/io.hpp"
#include "copoly/maxent.hpp"
#include "copoly/polytope.hpp"
#include "copoly/transforms.hpp"

namespace copoly::cli {

namespace {

// A token failing to parse as spec, grid or point; mapped to exit code 2.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Verification : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

RatVec parse_point(const std::string& text) {
  RatVec out;
  for (const auto& t : split(text, ',')) out.push_back(Rational::parse(t));
  return out;
}

// A file, or a family spec such as "udc:3x3:density".
HRep load_system(const std::string& source, FamilySpec* spec = nullptr) {
  if (std::filesystem::is_regular_file(source)) {
    std::ifstream in(source);
    return read_hrep(in);
  }
  FamilySpec s;
  try {
    s = FamilySpec::parse(source);
  } catch (const ParseError& e) {
    throw Usage(e.what());
  }
  if (spec) *spec = s;
  return build(s);
}

// "pi:3x4", "min:3x3", "w:2x2", rows such as "0,0,0;0,1/4,1/2;0,1/2,1", or
// a JSON matrix file.
GridMatrix parse_grid(const std::string& text) {
  if (std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    return GridMatrix(matrix_from_json(nlohmann::json::parse(in)));
  }
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string name = text.substr(0, colon), size = text.substr(colon + 1);
    auto x = size.find('x');
    size_t p, q;
    try {
      p = std::stoul(size.substr(0, x));
      q = x == std::string::npos ? p : std::stoul(size.substr(x + 1));
    } catch (const std::exception&) {
      throw Usage("bad grid size in " + text);
    }
    if (name == "pi") return restriction(Named::Pi, p, q);
    if (name == "min" || name == "m") return restriction(Named::M, p, q);
    if (name == "w") return restriction(Named::W, p, q);
    throw Usage("unknown copula " + name);
  }
  std::vector<RatVec> rows;
  for (const auto& r : split(text, ';')) rows.push_back(parse_point(r));
  if (rows.size() < 2 || rows[0].size() < 2) throw Usage("a grid needs at least 2 x 2 values");
  for (const auto& r : rows)
    if (r.size() != rows[0].size()) throw Usage("grid rows differ in length");
  return GridMatrix(RatMatrix::from_rows(rows));
}

void write_hrep(std::ostream& os, const HRep& h, const std::string& format) {
  if (format == "json")
    os << to_json(h).dump(2) << '\n';
  else
    write_hrep_cdd(os, h);
}

void write_vrep(std::ostream& os, const VRep& v, const std::string& format) {
  if (format == "json")
    os << to_json(v).dump(2) << '\n';
  else
    write_vrep_cdd(os, v);
}

template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot open " + path);
  write(os);
}

// A grid given for a density-space system goes through T first.
RatVec point_from(const std::string& point, const std::string& grid, const HRep& h) {
  if (!point.empty()) return parse_point(point);
  if (!grid.empty()) {
    GridMatrix g = parse_grid(grid);
    if (h.dim == g.p * g.q && h.dim != (g.p + 1) * (g.q + 1)) return apply_T(g, Boundary::ZeroOnly).point();
    return g.point();
  }
  throw Usage("need --point or --grid");
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(16) << x;
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"polytopes of discrete copulas and quasi-copulas", "copoly"};
  app.require_subcommand(1);
  std::string source, format = "cdd", output, point, grid, at, verify_family;
  size_t refinement = 4, samples = 0, p_max = 5, gf_degree = 0;
  unsigned long long seed = 20240521;
  double rho_target = 0, tol = 1e-8;
  bool has_rho = false;
  size_t max_iter = 100000, tp = 0, tq = 0;

  auto* family = app.add_subcommand("family", "write the H-representation of a family");
  family->add_option("spec", source, "family spec or file")->required();
  family->add_option("--format", format)->check(CLI::IsMember({"cdd", "json"}));
  family->add_option("-o,--output", output);

  auto* vertices = app.add_subcommand("vertices", "enumerate vertices and print their count");
  vertices->add_option("spec", source)->required();
  vertices->add_option("--format", format)->check(CLI::IsMember({"cdd", "json"}));
  vertices->add_option("-o,--output", output);

  auto* minimal = app.add_subcommand("minimal", "certify the irredundant system and print its facet count");
  minimal->add_option("spec", source)->required();
  minimal->add_option("--format", format)->check(CLI::IsMember({"cdd", "json"}));
  minimal->add_option("-o,--output", output);

  auto* member = app.add_subcommand("member", "exact membership test");
  member->add_option("spec", source)->required();
  member->add_option("--point", point);
  member->add_option("--grid", grid);

  auto* is_vertex_cmd = app.add_subcommand("is-vertex", "vertex rank test");
  is_vertex_cmd->add_option("spec", source)->required();
  is_vertex_cmd->add_option("--point", point);
  is_vertex_cmd->add_option("--grid", grid);

  auto* extend = app.add_subcommand("extend", "evaluate or verify the checkerboard extension");
  extend->add_option("--grid", grid);
  extend->add_option("--at", at, "u,v");
  extend->add_option("--verify", verify_family, "udc or cdq spec, e.g. udc:3x3")->excludes("--at");
  extend->add_option("--refinement", refinement)->check(CLI::PositiveNumber);
  extend->add_option("--samples", samples, "random convex combinations of vertices");
  extend->add_option("--seed", seed);

  auto* rho = app.add_subcommand("rho", "Spearman's rho of the extension");
  rho->add_option("--grid", grid)->required();

  auto* maxent = app.add_subcommand("maxent", "maximum-entropy density");
  maxent->add_option("spec", source)->required();
  maxent->add_option("--rho", rho_target)->each([&](const std::string&) { has_rho = true; });
  maxent->add_option("--tol", tol)->check(CLI::PositiveNumber);
  maxent->add_option("--max-iter", max_iter);
  maxent->add_option("-o,--output", output);

  auto* census = app.add_subcommand("census", "decomposable and indecomposable vertex counts");
  std::string census_family = "udc";
  census->add_option("--family", census_family)->check(CLI::IsMember({"udc", "cdq"}));
  census->add_option("--p-max", p_max)->check(CLI::Range(1, 5));
  census->add_option("--gf-degree", gf_degree, "also check the generating-function identities");
  census->add_option("-o,--output", output);

  auto* table1 = app.add_subcommand("table1", "recompute the vertex-count table and compare");

  auto* tau = app.add_subcommand("tau-det", "determinant of tau");
  tau->add_option("p", tp)->required()->check(CLI::PositiveNumber);
  tau->add_option("q", tq)->required()->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (*family) {
      HRep h = load_system(source);
      emit(output, out, [&](std::ostream& os) { write_hrep(os, h, format); });
    } else if (*vertices) {
      VRep v = enumerate_vertices(load_system(source));
      if (!output.empty()) emit(output, out, [&](std::ostream& os) { write_vrep(os, v, format); });
      else write_vrep(out, v, format);
      out << v.vertices.size() << '\n';
    } else if (*minimal) {
      FamilySpec s;
      HRep h = load_system(source, &s);
      MinimalResult m = certify_minimal(h);
      if (!output.empty()) emit(output, out, [&](std::ostream& os) { write_hrep(os, m.minimal, format); });
      out << m.minimal.inequality_count() << " facets\n";
    } else if (*member) {
      HRep h = load_system(source);
      Membership m = contains(h, point_from(point, grid, h));
      if (!m.inside) {
        out << "outside\n";
        for (const auto& l : m.violated) err << "violates " << l << '\n';
        return 1;
      }
      out << "inside\n";
    } else if (*is_vertex_cmd) {
      HRep h = load_system(source);
      bool v = is_vertex(h, point_from(point, grid, h));
      out << (v ? "vertex" : "not a vertex") << '\n';
      if (!v) {
        err << "point is not a vertex\n";
        return 1;
      }
    } else if (*extend) {
      if (!verify_family.empty()) {
        FamilySpec s;
        try {
          s = FamilySpec::parse(verify_family);
        } catch (const ParseError& e) {
          throw Usage(e.what());
        }
        if (s.family != Family::UDC && s.family != Family::CDQ) throw Usage("--verify takes a udc or cdq spec");
        s.space = Space::GRID;
        const bool udc = s.family == Family::UDC;
        auto check = [&](const GridMatrix& g) {
          return udc ? verify_extension_ultramodular(g, refinement) : verify_extension_quasi(g, refinement);
        };
        std::vector<GridMatrix> grids;
        if (!grid.empty()) {
          grids.push_back(parse_grid(grid));
        } else {
          VRep v = enumerate_vertices(build(s));
          for (const auto& x : v.vertices) grids.push_back(GridMatrix::from_point(s.p, s.q, x));
          std::mt19937_64 rng(seed);
          for (size_t k = 0; k < samples; ++k)
            grids.push_back(GridMatrix::from_point(s.p, s.q, random_convex_combination(v, rng)));
        }
        size_t failures = 0;
        for (size_t k = 0; k < grids.size(); ++k)
          if (!check(grids[k])) {
            ++failures;
            err << "extension check failed on grid " << k << '\n';
          }
        out << grids.size() - failures << "/" << grids.size() << " passed\n";
        return failures ? 1 : 0;
      }
      if (grid.empty() || at.empty()) throw Usage("extend needs --grid with --at or --verify");
      RatVec uv = parse_point(at);
      if (uv.size() != 2) throw Usage("--at takes u,v");
      out << checkerboard_eval(parse_grid(grid), {uv[0], uv[1]}) << '\n';
    } else if (*rho) {
      out << spearman_rho(parse_grid(grid)) << '\n';
    } else if (*maxent) {
      MaxEntProblem pr;
      try {
        pr.family = FamilySpec::parse(source);
      } catch (const ParseError& e) {
        throw Usage(e.what());
      }
      pr.family.space = Space::DENSITY;
      pr.tolerance = tol;
      pr.max_iterations = max_iter;
      if (has_rho) pr.moments.push_back({rho_functional(pr.family.p, pr.family.q), rho_target});
      MaxEntSolution s = solve_maxent(pr);
      // written by hand to keep 17 significant digits
      emit(output, out, [&](std::ostream& os) {
        os << "{\n  \"p\": " << s.p << ",\n  \"q\": " << s.q << ",\n  \"density\": [";
        for (size_t i = 0; i < s.p; ++i) {
          os << (i ? ",\n    [" : "\n    [");
          for (size_t k = 0; k < s.q; ++k) os << (k ? ", " : "") << fixed(s.at(i, k));
          os << ']';
        }
        os << "\n  ],\n  \"entropy\": " << fixed(s.entropy) << ",\n  \"kkt_residual\": " << fixed(s.kkt_residual)
           << ",\n  \"iterations\": " << s.iterations << "\n}\n";
      });
    } else if (*census) {
      auto c = run_census(census_family == "udc" ? Family::UDC : Family::CDQ, p_max);
      emit(output, out, [&](std::ostream& os) { write_census_csv(os, c); });
      if (gf_degree) {
        bool lit = gf_check(c, gf_degree), uf = gf_check_unique_factorization(c, gf_degree);
        out << "V*D = D^2 + D - 1 and D = 1/(1 - ID): " << (lit ? "holds" : "fails") << '\n';
        out << "V = 1/(1 - ID): " << (uf ? "holds" : "fails") << '\n';
        if (!lit) {
          err << "generating-function identity fails through degree " << gf_degree << '\n';
          return 1;
        }
      }
    } else if (*table1) {
      auto cells = vertex_count_cells();
      out << "family";
      for (size_t k = 0; k < 6; ++k) out << ' ' << cells[k].p << 'x' << cells[k].q;
      out << '\n';
      size_t mismatches = 0;
      for (size_t k = 0; k < cells.size(); ++k) {
        compute_cell(cells[k]);
        if (k % 6 == 0) out << family_name(cells[k].family);
        out << ' ' << cells[k].computed;
        if (cells[k].computed != cells[k].expected) {
          out << "(expected " << cells[k].expected << ')';
          err << "mismatch " << family_name(cells[k].family) << ' ' << cells[k].p << 'x' << cells[k].q << ": "
              << cells[k].computed << " != " << cells[k].expected << '\n';
          ++mismatches;
        }
        if (k % 6 == 5) out << '\n';
      }
      return mismatches ? 1 : 0;
    } else if (*tau) {
      out << tau_det(tp, tq) << '\n';
    }
  } catch (const Usage& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace copoly::cli
