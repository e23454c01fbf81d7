#include <bit>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuspforge.hpp"

namespace fs = std::filesystem;
using namespace cuspforge;

namespace {

// "v0:1,v2:0" -> {0: 1, 2: 0}. The prefix letter is checked but otherwise
// only documents what the index refers to.
std::map<std::size_t, std::uint32_t> parse_assignments(const std::string& text, char prefix) {
  std::map<std::size_t, std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const auto colon = item.find(':');
    if (item.size() < 3 || item[0] != prefix || colon == std::string::npos)
      throw ValidationError("bad assignment \"" + item + "\", expected " + prefix + "<index>:<value>");
    try {
      out[std::stoul(item.substr(1, colon - 1))] = static_cast<std::uint32_t>(std::stoul(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw ValidationError("bad assignment \"" + item + "\"");
    }
    pos = end + 1;
  }
  return out;
}

FillingChoice parse_filling(const std::string& text, const IdealPolytope& p) {
  if (text == "auto") return default_filling(p);
  FillingChoice c{std::vector<std::uint32_t>(p.ideal_vertices.size(), 0)};
  for (auto [k, a] : parse_assignments(text, 'v')) {
    if (k >= c.axis.size()) throw ValidationError("ideal vertex v" + std::to_string(k) + " does not exist");
    c.axis[k] = a;
  }
  return c;
}

DiagonalChoice parse_diagonals(const std::string& text, const GossetPolytope& g) {
  DiagonalChoice d = auto_diagonals(g);
  if (text == "auto") return d;
  for (auto [f, a] : parse_assignments(text, 'f')) {
    if (f >= d.diagonal.size()) throw ValidationError("facet f" + std::to_string(f) + " does not exist");
    d.diagonal[f] = a;
  }
  return d;
}

Colouring parse_colouring(const std::string& text, std::uint32_t facets) {
  if (text == "distinct") return Colouring::distinct(facets);
  Colouring c;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    try {
      c.colour.push_back(std::stoull(text.substr(pos, end - pos), nullptr, 0));
    } catch (const std::logic_error&) {
      throw ValidationError("bad colour \"" + text.substr(pos, end - pos) + "\"");
    }
    pos = end + 1;
  }
  if (c.colour.size() != facets) throw ValidationError("need one colour per facet (" + std::to_string(facets) + ")");
  std::uint64_t all = 0;
  for (auto x : c.colour) all |= x;
  c.rank = static_cast<unsigned>(std::bit_width(all));
  return c;
}

/// $CUSPFORGE_DATA/gosset<n>.json when present, else generated.
GossetPolytope load_or_generate_gosset(int n) {
  if (const char* data = std::getenv("CUSPFORGE_DATA")) {
    const fs::path p = fs::path(data) / ("gosset" + std::to_string(n) + ".json");
    if (fs::exists(p)) return validate_gosset(face_lattice_from_json(read_json(p)));
  }
  return gosset(n);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) std::cout << j.dump(1) << '\n';
  else write_json(out, j);
}

Json f_vector_json(const std::vector<std::size_t>& f) { return Json(f); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cuspforge: cusped hyperbolic manifolds, Dehn fillings and spin certificates"};
  app.require_subcommand(1);

  int n = 3;
  bool dual = false;
  std::string in, out, choices = "auto", diagonals = "auto", colours = "distinct", coeff = "z2";
  std::string manifold, filling;
  bool cusped = false, lie = false, explicit_count = false;
  std::size_t budget = 0;
  std::vector<std::string> suites;

  auto* g_cmd = app.add_subcommand("gosset", "Gosset polytope G^n (or its dual P^n) as a face lattice");
  g_cmd->add_option("--n", n, "dimension, 3..8")->required();
  g_cmd->add_flag("--dual", dual, "emit P^n instead of G^n");
  g_cmd->add_option("--out", out, "output JSON (stdout summary always printed)");

  auto* fill_cmd = app.add_subcommand("fill", "Dehn fill the ideal vertices of P^n");
  fill_cmd->add_option("--in", in, "ideal polytope face lattice")->required();
  fill_cmd->add_option("--choices", choices, "\"auto\" or v<k>:<axis>,... (unlisted vertices take axis 0)");
  fill_cmd->add_option("--out", out, "filled polytope face lattice")->required();

  auto* sub_cmd = app.add_subcommand("subdivide", "Triangulate the cross-polytope facets of G^n");
  sub_cmd->add_option("--in", in, "Gosset face lattice")->required();
  sub_cmd->add_option("--diagonals", diagonals, "\"auto\" or f<facet>:<pair>,...");
  sub_cmd->add_option("--out", out, "simplicial complex JSON")->required();

  auto* rzk_cmd = app.add_subcommand("rzk", "Real moment-angle complex of a simplicial complex");
  rzk_cmd->add_option("--in", in, "simplicial complex JSON")->required();
  rzk_cmd->add_option("--out", out, "cube complex (.json, or .rzk for the binary table)")->required();

  auto* col_cmd = app.add_subcommand("colour", "Colouring construction on a simple polytope");
  col_cmd->add_option("--in", in, "simple polytope face lattice")->required();
  col_cmd->add_option("--colours", colours, "\"distinct\" or one integer bitmask per facet");
  col_cmd->add_flag("--cusped", cusped, "drop the cells dual to the filling faces (cusped model)");
  col_cmd->add_option("--out", out, "cube complex (.json or .rzk)")->required();

  auto* hom_cmd = app.add_subcommand("homology", "Betti numbers and torsion");
  hom_cmd->add_option("--in", in, "simplicial or cube complex")->required();
  hom_cmd->add_option("--coeff", coeff, "z2 or z")->check(CLI::IsMember({"z", "z2"}));
  hom_cmd->add_option("--out", out, "report JSON (default stdout)");

  auto* cen_cmd = app.add_subcommand("census", "Cusp census with all-distinct colours");
  auto* cen_in = cen_cmd->add_option("--in", in, "ideal polytope face lattice");
  auto* cen_n = cen_cmd->add_option("--n", n, "read off G^n directly (no face lattice)");
  cen_in->excludes(cen_n);
  cen_cmd->add_flag("--explicit", explicit_count, "also count by union-find over all copies");
  cen_cmd->add_option("--out", out, "census JSON (default stdout)");

  auto* spin_cmd = app.add_subcommand("spin-report", "Cusp labels and Dirac label from a spin filling");
  spin_cmd->add_option("--manifold", manifold, "cusped model M")->required();
  spin_cmd->add_option("--filling", filling, "filled manifold N containing M")->required();
  spin_cmd->add_flag("--lie", lie, "also report Lie-achievability per cusp");
  spin_cmd->add_option("--out", out, "report JSON (default stdout)");

  auto* pipe_cmd = app.add_subcommand("pipeline", "Full chain at n = 3, 4; cusp census above");
  pipe_cmd->add_option("--n", n, "dimension, 3..8")->required();
  pipe_cmd->add_option("--choices", choices, "\"auto\" or v<k>:<axis>,...");
  pipe_cmd->add_option("--out-dir", out, "artifact directory")->required();
  pipe_cmd->add_option("--budget", budget, "cell cap (overrides CUSPFORGE_BUDGET)");

  auto* ver_cmd = app.add_subcommand("verify", "Run invariant suites");
  ver_cmd->add_option("suite", suites, "links, duality, homology, census, characteristic (default: all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCode::validation);
  }

  try {
    if (*g_cmd) {
      if (n < 3 || n > 8) throw ValidationError("--n must lie in 3..8");
      auto g = load_or_generate_gosset(n);
      Json summary{{"n", n},
                   {"f_vector", f_vector_json(g.lattice.f_vector())},
                   {"simplex_facets", g.count(FacetKind::simplex)},
                   {"cross_facets", g.count(FacetKind::cross)}};
      if (dual) {
        auto p = ideal_dual(g);
        summary["dual_facets"] = p.facet_count();
        summary["ideal_vertices"] = p.ideal_vertices.size();
        summary["real_vertices"] = p.real_vertices().size();
        if (!out.empty()) write_json(out, to_json(p.lattice));
      } else if (!out.empty()) {
        write_json(out, to_json(g.lattice));
      }
      std::cout << summary.dump() << '\n';
    } else if (*fill_cmd) {
      auto p = ideal_polytope(face_lattice_from_json(read_json(in)));
      auto pbar = dehn_fill(p, parse_filling(choices, p));
      write_json(out, to_json(pbar.lattice));
      std::cout << Json{{"f_vector", f_vector_json(pbar.lattice.f_vector())}, {"simple", is_simple(pbar.lattice)}}.dump()
                << '\n';
    } else if (*sub_cmd) {
      auto g = validate_gosset(face_lattice_from_json(read_json(in)));
      auto k = subdivide_cross_facets(g, parse_diagonals(diagonals, g));
      write_json(out, to_json(k));
      std::cout << Json{{"f_vector", f_vector_json(k.f_vector())}}.dump() << '\n';
    } else if (*rzk_cmd) {
      auto z = real_moment_angle(simplicial_from_json(read_json(in)));
      write_cubical(out, z);
      std::cout << Json{{"f_vector", f_vector_json(z.f_vector())}}.dump() << '\n';
    } else if (*col_cmd) {
      auto lattice = face_lattice_from_json(read_json(in));
      CubicalComplex z;
      if (cusped) {
        if (colours != "distinct") throw ValidationError("the cusped model uses distinct colours");
        z = cusped_manifold(filled_polytope(std::move(lattice)));
      } else {
        z = colour_manifold(lattice, parse_colouring(colours, lattice.facet_count()));
      }
      write_cubical(out, z);
      std::cout << Json{{"f_vector", f_vector_json(z.f_vector())}}.dump() << '\n';
    } else if (*hom_cmd) {
      const auto c = coeff == "z" ? Coefficients::integers : Coefficients::mod2;
      const fs::path path = resolve_input(in);
      ChainComplexData data;
      std::ifstream probe(path, std::ios::binary);
      char magic[4] = {};
      probe.read(magic, 4);
      if (std::string(magic, 4) != "RZK1" && read_json(path).value("type", "") == "simplicial")
        data = chain_complex_of(simplicial_from_json(read_json(path)), c);
      else
        data = chain_complex_of(read_cubical(path), c);
      emit(to_json(homology(data)), out);
    } else if (*cen_cmd) {
      CuspCensus census;
      Json extra = Json::object();
      if (!in.empty()) {
        auto p = ideal_polytope(face_lattice_from_json(read_json(in)));
        census = cusp_census(p);
        if (explicit_count) {
          auto e = cusp_census_explicit(p, Colouring::distinct(p.facet_count()));
          extra["explicit_total"] = e.total.str();
          extra["agree"] = e.total == census.total;
        }
      } else {
        if (*cen_n && (n < 3 || n > 8)) throw ValidationError("--n must lie in 3..8");
        if (!*cen_n) throw ValidationError("census needs --in or --n");
        census = cusp_census(gosset_facets(n));
        if (explicit_count) throw ValidationError("--explicit needs --in");
      }
      Json j = to_json(census);
      for (auto& [k, v] : extra.items()) j[k] = v;
      if (out.empty()) {
        std::cout << "total " << census.total.str() << " (~" << magnitude(census.total) << ") over "
                  << census.cusps.size() << " ideal vertices\n";
      } else {
        write_json(out, j);
      }
    } else if (*spin_cmd) {
      auto m = read_cubical(manifold);
      auto nbar = read_cubical(filling);
      auto evidence = spin_evidence(nbar);
      if (!evidence.spinnable()) throw CertificateError("filling is not verified spin (" + evidence.w2.provenance + ")");
      auto tori = cusp_tori(m, nbar);
      std::vector<CubicalComplex> sections;
      for (const auto& t : tori) sections.push_back(t.complex);
      SpinReport r;
      r.cusps = bounding_filling_certificate(m, nbar, evidence, sections);
      r.dirac = dirac_label(r.cusps);
      r.spinnable = true;
      r.structure_count = BigInt(1) << homology(chain_complex_of(m, Coefficients::mod2)).betti.at(1);
      Json j = to_json(r);
      j["filling_spin"] = evidence.w2.provenance;
      if (lie) {
        Json achievable = Json::array();
        for (const auto& t : sections) achievable.push_back(lie_cusp_certificate(m, t, evidence));
        j["lie_achievable"] = std::move(achievable);
      }
      emit(j, out);
    } else if (*pipe_cmd) {
      PipelineConfig cfg;
      cfg.n = n;
      cfg.budget = budget;
      cfg.out_dir = out;
      if (choices != "auto") {
        if (n > 4) throw ValidationError("--choices applies to n = 3, 4");
        cfg.filling = parse_filling(choices, ideal_dual(gosset(n)));
      }
      auto r = run_pipeline(cfg);
      Json summary{{"n", r.n}, {"census_total", r.census.total.str()}, {"magnitude", magnitude(r.census.total)}};
      if (r.report) {
        summary["cusps"] = r.report->cusps.size();
        summary["dirac"] = to_string(r.report->dirac);
      }
      if (r.filled_homology) summary["filled_betti"] = r.filled_homology->betti;
      summary["artifacts"] = r.artifacts.size();
      std::cout << summary.dump() << '\n';
    } else if (*ver_cmd) {
      if (suites.empty()) suites = verify_suites();
      bool ok = true;
      for (const auto& s : suites) {
        auto v = verify(s);
        for (const auto& c : v.checks)
          std::cout << (c.passed ? "PASS " : "FAIL ") << s << ": " << c.name << " [" << c.detail << "]\n";
        ok &= v.passed();
      }
      return ok ? 0 : static_cast<int>(ErrorCode::certificate);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
