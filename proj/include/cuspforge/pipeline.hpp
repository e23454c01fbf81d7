#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/algebra/homology.hpp"
#include "cuspforge/characteristic.hpp"
#include "cuspforge/duality.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/filling.hpp"
#include "cuspforge/io.hpp"
#include "cuspforge/isomorphism.hpp"
#include "cuspforge/moment_angle.hpp"
#include "cuspforge/polytope_zoo.hpp"

namespace cuspforge {

struct PipelineConfig {
  int n = 3;
  std::optional<FillingChoice> filling;    // default: default_filling
  std::optional<DiagonalChoice> diagonals;  // default: the ones matching the filling
  std::string colouring = "distinct";
  std::size_t budget = 0;  // 0 keeps CUSPFORGE_BUDGET / the built-in cap
  std::filesystem::path out_dir;  // empty: no artifacts
};

struct PipelineResult {
  int n = 0;
  bool census_only = false;
  CuspCensus census;
  std::optional<SpinReport> report;
  std::optional<HomologyReport> filled_homology;
  std::vector<std::string> stages;
  std::vector<std::filesystem::path> artifacts;
};

/// The first filling, in lexicographic order, whose result is a
/// combinatorial n-cube; all zeros when there is none.
inline FillingChoice default_filling(const IdealPolytope& p) {
  FillingChoice zero{std::vector<std::uint32_t>(p.ideal_vertices.size(), 0)};
  if (p.facet_count() != static_cast<std::uint32_t>(2 * p.n())) return zero;
  const auto cube = dualize(cube_polytope(p.n()));
  for (const auto& c : all_filling_choices(p)) {
    auto pbar = dehn_fill(p, c);
    if (is_simple(pbar.lattice) && isomorphic(dualize(pbar.lattice), cube)) return c;
  }
  return zero;
}

namespace detail {

class StageRunner {
 public:
  explicit StageRunner(PipelineResult& r) : result_(r) {}

  template <class F>
  auto operator()(const std::string& name, F&& f) -> decltype(f()) {
    result_.stages.push_back(name);
    try {
      return f();
    } catch (const Error& e) {
      throw Error(e.code(), name + ": " + e.what());
    }
  }

 private:
  PipelineResult& result_;
};

// Restores the previous budget override on exit.
struct BudgetScope {
  std::size_t saved;
  explicit BudgetScope(std::size_t cells) : saved(budget_override()) {
    if (cells > 0) budget_override() = cells;
  }
  ~BudgetScope() { budget_override() = saved; }
};

}  // namespace detail

/// gosset -> dual -> fill -> subdivide -> duality check -> colour and RZ_K ->
/// manifold check -> homology -> spin obstruction -> bounding certificate ->
/// Dirac label, at n = 3 and 4. Above that only the cusp census is computed.
inline PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.n < 3 || cfg.n > 8) throw ValidationError("pipeline: n must lie in 3..8");
  if (cfg.colouring != "distinct") throw ValidationError("pipeline: only the distinct colouring is supported");
  detail::BudgetScope budget(cfg.budget);
  PipelineResult r;
  r.n = cfg.n;
  detail::StageRunner stage(r);
  const std::string tag = std::to_string(cfg.n);
  auto emit = [&](const std::string& name, const Json& j) {
    if (cfg.out_dir.empty()) return;
    std::filesystem::create_directories(cfg.out_dir);
    write_json(cfg.out_dir / name, j);
    r.artifacts.push_back(cfg.out_dir / name);
  };

  if (cfg.n >= 5) {
    r.census_only = true;
    auto g = stage("gosset", [&] { return gosset_facets(cfg.n); });
    r.census = stage("census", [&] { return cusp_census(g); });
    emit("census" + tag + ".json", to_json(r.census));
    return r;
  }

  auto g = stage("gosset", [&] { return gosset(cfg.n); });
  emit("g" + tag + ".json", to_json(g.lattice));
  auto p = stage("dual", [&] { return ideal_dual(g); });
  emit("p" + tag + ".json", to_json(p.lattice));
  r.census = stage("census", [&] { return cusp_census(p); });
  emit("census" + tag + ".json", to_json(r.census));

  const FillingChoice choice = cfg.filling ? *cfg.filling : default_filling(p);
  auto pbar = stage("fill", [&] { return dehn_fill(p, choice); });
  emit("p" + tag + "bar.json", to_json(pbar.lattice));
  const DiagonalChoice diag = cfg.diagonals ? *cfg.diagonals : corresponding_diagonals(g, p, choice);
  auto k = stage("subdivide", [&] { return subdivide_cross_facets(g, diag); });
  emit("k" + std::to_string(cfg.n - 1) + ".json", to_json(k));
  stage("duality_check", [&] {
    if (!duality_check(pbar.lattice, k))
      throw CertificateError("the dual of the filled polytope is not the subdivided complex");
  });

  auto zbar = stage("colour", [&] { return colour_manifold(pbar.lattice, Colouring::distinct(pbar.lattice.facet_count())); });
  emit("m" + tag + "bar.json", to_json(zbar));
  if (!cfg.out_dir.empty() && cfg.n == 4) {
    write_cubical(cfg.out_dir / ("m" + tag + "bar.rzk"), zbar);
    r.artifacts.push_back(cfg.out_dir / ("m" + tag + "bar.rzk"));
  }
  stage("rzk", [&] {
    if (!isomorphic(zbar, real_moment_angle(k)))
      throw CertificateError("colour construction and RZ_K are not isomorphic");
  });
  stage("manifold_check", [&] {
    auto m = manifold_check(zbar, k);
    if (!m.pass()) throw CertificateError(std::to_string(m.failures()) + " vertex links are not copies of K");
  });
  r.filled_homology = stage("homology", [&] { return homology(chain_complex_of(zbar, Coefficients::integers)); });
  emit("homology" + tag + "bar.json", to_json(*r.filled_homology));

  auto evidence = stage("spin_obstruction", [&] {
    auto e = spin_evidence(zbar);
    if (!e.spinnable()) throw CertificateError("filled manifold is not verified spin: " + e.w2.provenance);
    return e;
  });
  auto m = stage("cusped_model", [&] { return cusped_manifold(pbar); });
  emit("m" + tag + ".json", to_json(m));
  auto tori = stage("cusp_tori", [&] {
    auto t = cusp_tori(m, pbar);
    if (BigInt(t.size()) != r.census.total)
      throw CertificateError("located " + std::to_string(t.size()) + " cusp sections, census says " + r.census.total.str());
    return t;
  });
  SpinReport report;
  report.cusps = stage("bounding_certificate", [&] {
    std::vector<CubicalComplex> sections;
    for (const auto& t : tori) sections.push_back(t.complex);
    return bounding_filling_certificate(m, zbar, evidence, sections);
  });
  report.dirac = stage("dirac_label", [&] { return dirac_label(report.cusps); });
  report.spinnable = true;
  report.structure_count = BigInt(1) << homology(chain_complex_of(m, Coefficients::mod2)).betti.at(1);
  Json out = to_json(report);
  out["filling_spin"] = evidence.w2.provenance;
  out["filling_structure_count"] = spin_structures(zbar, evidence).count.str();
  emit("report" + tag + ".json", out);
  r.report = std::move(report);
  return r;
}

// Verification suites.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifySummary {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

inline void check(VerifySummary& s, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  try {
    auto [ok, detail] = f();
    s.checks.push_back({name, ok, std::move(detail)});
  } catch (const std::exception& e) {
    s.checks.push_back({name, false, e.what()});
  }
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (auto x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return "(" + out + ")";
}

struct FilledInstance {
  GossetPolytope g;
  IdealPolytope p;
  FilledPolytope pbar;
  SimplicialComplex k;
};

inline FilledInstance filled_instance(int n) {
  FilledInstance f{gosset(n), {}, {}, {}};
  f.p = ideal_dual(f.g);
  const auto c = default_filling(f.p);
  f.pbar = dehn_fill(f.p, c);
  f.k = subdivide_cross_facets(f.g, corresponding_diagonals(f.g, f.p, c));
  return f;
}

inline SimplicialComplex octahedron_boundary() {
  std::vector<Simplex> facets;
  for (std::uint32_t a : {0u, 1u})
    for (std::uint32_t b : {2u, 3u})
      for (std::uint32_t c : {4u, 5u}) facets.push_back({a, b, c});
  return SimplicialComplex::from_facets(6, std::move(facets));
}

}  // namespace detail

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"links", "duality", "homology", "census", "characteristic"};
  return names;
}

inline VerifySummary verify(const std::string& suite) {
  VerifySummary s{suite, {}};
  using detail::check;
  if (suite == "links") {
    auto links = [&](const std::string& name, const CubicalComplex& z, const SimplicialComplex& k) {
      check(s, name, [&] {
        auto m = manifold_check(z, k);
        return std::pair{m.pass(), std::to_string(m.vertices.size()) + " vertices, " + std::to_string(m.failures()) +
                                       " failures"};
      });
    };
    const auto oct = detail::octahedron_boundary();
    links("RZ of the octahedron boundary", real_moment_angle(oct), oct);
    for (int n : {3, 4}) {
      auto f = detail::filled_instance(n);
      links("filled manifold, n=" + std::to_string(n),
            colour_manifold(f.pbar.lattice, Colouring::distinct(f.pbar.lattice.facet_count())), f.k);
    }
    const auto tk = dualize(cube_polytope(4));
    links("RZ of the 16-cell boundary", real_moment_angle(tk), tk);
  } else if (suite == "duality") {
    for (int n : {3, 4}) {
      auto g = gosset(n);
      auto p = ideal_dual(g);
      auto choices = all_filling_choices(p);
      if (n == 4) choices.resize(std::min<std::size_t>(choices.size(), 9));
      for (const auto& c : choices) {
        std::string label;
        for (auto a : c.axis) label += std::to_string(a);
        check(s, "n=" + std::to_string(n) + " filling " + label, [&] {
          auto pbar = dehn_fill(p, c);
          auto k = subdivide_cross_facets(g, corresponding_diagonals(g, p, c));
          return std::pair{is_simple(pbar.lattice) && duality_check(pbar.lattice, k),
                           "f-vector " + detail::join(pbar.lattice.f_vector())};
        });
      }
    }
  } else if (suite == "homology") {
    const auto oct = detail::octahedron_boundary();
    const auto t3 = real_moment_angle(oct);
    for (auto coeff : {Coefficients::integers, Coefficients::mod2})
      check(s, "RZ of the octahedron boundary is T^3 over " + to_string(coeff), [&] {
        auto h = homology(chain_complex_of(t3, coeff));
        bool ok = h.betti == std::vector<std::size_t>{1, 3, 3, 1};
        for (const auto& t : h.torsion) ok &= t.empty();
        return std::pair{ok, "betti " + detail::join(h.betti)};
      });
    check(s, "distinct-coloured square is T^2", [&] {
      auto h = homology(chain_complex_of(colour_manifold(cube_polytope(2), Colouring::distinct(4)), Coefficients::integers));
      return std::pair{h.betti == std::vector<std::size_t>{1, 2, 1}, "betti " + detail::join(h.betti)};
    });
    for (int n : {3, 4}) {
      auto f = detail::filled_instance(n);
      auto z = colour_manifold(f.pbar.lattice, Colouring::distinct(f.pbar.lattice.facet_count()));
      check(s, "cell count and Euler characteristic, n=" + std::to_string(n), [&] {
        const bool cells = BigInt(z.cell_count()) == moment_angle_cell_count(f.k);
        const bool chi = BigInt(z.euler_characteristic()) == moment_angle_euler_characteristic(f.k);
        return std::pair{cells && chi, std::to_string(z.cell_count()) + " cells, chi " +
                                           std::to_string(z.euler_characteristic())};
      });
      check(s, "Poincare duality of Z/2 Betti numbers, n=" + std::to_string(n), [&] {
        auto b = homology(chain_complex_of(z, Coefficients::mod2)).betti;
        return std::pair{std::equal(b.begin(), b.end(), b.rbegin()), "betti " + detail::join(b)};
      });
    }
  } else if (suite == "census") {
    for (int n : {3, 4}) {
      auto p = ideal_dual(gosset(n));
      check(s, "formula vs union-find, n=" + std::to_string(n), [&] {
        auto a = cusp_census(p);
        auto b = cusp_census_explicit(p, Colouring::distinct(p.facet_count()));
        return std::pair{a.total == b.total, a.total.str() + " vs " + b.total.str()};
      });
      check(s, "lattice-free census agrees, n=" + std::to_string(n), [&] {
        auto a = cusp_census(p);
        auto b = cusp_census(gosset_facets(n));
        return std::pair{a.total == b.total, b.total.str()};
      });
      check(s, "filling-cube copies per torus, n=" + std::to_string(n), [&] {
        auto f = detail::filled_instance(n);
        auto z = colour_manifold(f.pbar.lattice, Colouring::distinct(f.pbar.lattice.facet_count()));
        const std::size_t want = std::size_t{1} << (2 * n - 4);
        bool ok = true;
        for (std::size_t v = 0; v < f.pbar.filling_pairs.size(); ++v)
          for (auto size : preimage_components(z, f.pbar, v).component_sizes) ok &= size == want;
        return std::pair{ok, "expected " + std::to_string(want) + " copies per component"};
      });
    }
  } else if (suite == "characteristic") {
    const auto t3 = real_moment_angle(detail::octahedron_boundary());
    check(s, "T^3 orientable and spin", [&] {
      auto e = spin_evidence(t3);
      return std::pair{e.spinnable() && spin_structures(t3, e).count == 8, e.w2.provenance};
    });
    check(s, "Klein bottle is not orientable", [&] {
      Colouring c{2, {1, 1, 2, 3}};
      return std::pair{!orientability(colour_manifold(cube_polytope(2), c)), "H_2 = 0"};
    });
    check(s, "T^4 has an even intersection form", [&] {
      auto w = spin_obstruction(colour_manifold(cube_polytope(4), Colouring::distinct(8)));
      return std::pair{w.vanishes == Verdict::yes, w.provenance};
    });
    check(s, "filled manifold at n=4 is spin", [&] {
      auto f = detail::filled_instance(4);
      auto w = spin_obstruction(colour_manifold(f.pbar.lattice, Colouring::distinct(f.pbar.lattice.facet_count())));
      return std::pair{w.vanishes == Verdict::yes, w.provenance};
    });
    check(s, "summand implies Lie-achievable on the n=3 cusps", [&] {
      auto f = detail::filled_instance(3);
      auto zbar = colour_manifold(f.pbar.lattice, Colouring::distinct(f.pbar.lattice.facet_count()));
      auto e = spin_evidence(zbar);
      auto m = cusped_manifold(f.pbar);
      bool ok = true;
      std::size_t summands = 0;
      for (const auto& t : cusp_tori(m, f.pbar)) {
        const bool sum = summand_certificate(m, t.complex);
        summands += sum;
        if (sum) ok &= lie_cusp_certificate(m, t.complex, e);
      }
      return std::pair{ok, std::to_string(summands) + " summand certificates"};
    });
  } else {
    throw ValidationError("unknown verify suite \"" + suite + "\"");
  }
  return s;
}

}  // namespace cuspforge
