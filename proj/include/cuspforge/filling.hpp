#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/duality.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/face_lattice.hpp"
#include "cuspforge/isomorphism.hpp"
#include "cuspforge/polytope_zoo.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

using FacetPair = std::pair<std::uint32_t, std::uint32_t>;

/// One axis per ideal vertex (ideal vertices in lattice order). Axis a at v
/// picks the a-th pair of opposite facets of the cube link at v, pairs sorted
/// lexicographically.
struct FillingChoice {
  std::vector<std::uint32_t> axis;
  friend bool operator==(const FillingChoice&, const FillingChoice&) = default;
};

/// One diagonal per facet of G^n, indexed by facet; ignored on simplex
/// facets. Diagonal a on a cross-polytope picks its a-th antipodal pair,
/// pairs sorted lexicographically.
struct DiagonalChoice {
  std::vector<std::uint32_t> diagonal;
  friend bool operator==(const DiagonalChoice&, const DiagonalChoice&) = default;
};

/// Output of dehn_fill: a simple polytope with the inserted cubes marked.
struct FilledPolytope {
  FaceLattice lattice;
  /// Per ideal vertex of the source: lattice index of the new (n-2)-face.
  std::vector<std::size_t> filling_faces;
  /// Per ideal vertex: the facet pair {F1, F2} now meeting along that face.
  std::vector<FacetPair> filling_pairs;
};

/// Opposite facet pairs of the cube link at vertex `v`: facets through v that
/// share no face of P other than v itself. Sorted.
inline std::vector<FacetPair> opposite_pairs(const FaceLattice& p, std::size_t v) {
  const auto& star = p.faces()[v].facets;
  std::set<FacetPair> touching;
  for (const auto& f : p.faces()) {
    if (&f == &p.faces()[v] || f.facets.size() < 2) continue;
    if (!std::includes(star.begin(), star.end(), f.facets.begin(), f.facets.end())) continue;
    for (std::size_t a = 0; a < f.facets.size(); ++a)
      for (std::size_t b = a + 1; b < f.facets.size(); ++b) touching.emplace(f.facets[a], f.facets[b]);
  }
  std::vector<FacetPair> out;
  for (std::size_t a = 0; a < star.size(); ++a)
    for (std::size_t b = a + 1; b < star.size(); ++b)
      if (!touching.count({star[a], star[b]})) out.emplace_back(star[a], star[b]);
  std::vector<std::uint32_t> seen;
  for (auto [x, y] : out) seen.insert(seen.end(), {x, y});
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end() || seen.size() != star.size())
    throw ValidationError("link of vertex is not a cube: opposite facets are not a perfect matching");
  return out;
}

/// Replaces every ideal vertex v by an (n-2)-cube F = F1 ∩ F2, where {F1, F2}
/// is the chosen opposite pair at v. The faces of the cube are {F1, F2} ∪ T
/// with T taking at most one facet from each remaining opposite pair; a face
/// with |T| = t has rank n-2-t. Faces of P away from ideal vertices keep
/// their facet sets, so truncation and collapse happen in one rewrite.
inline FilledPolytope dehn_fill(const IdealPolytope& p, const FillingChoice& c) {
  const int n = p.n();
  require(c.axis.size() == p.ideal_vertices.size(),
          "filling choice has " + std::to_string(c.axis.size()) + " entries for " +
              std::to_string(p.ideal_vertices.size()) + " ideal vertices");
  std::vector<Face> faces;
  std::set<std::size_t> ideal(p.ideal_vertices.begin(), p.ideal_vertices.end());
  for (std::size_t i = 0; i < p.lattice.faces().size(); ++i)
    if (!ideal.count(i)) faces.push_back(p.lattice.faces()[i]);
  FilledPolytope out;
  for (std::size_t k = 0; k < p.ideal_vertices.size(); ++k) {
    auto pairs = opposite_pairs(p.lattice, p.ideal_vertices[k]);
    require(pairs.size() == static_cast<std::size_t>(n - 1), "cube link has the wrong number of axes");
    require(c.axis[k] < pairs.size(), "axis " + std::to_string(c.axis[k]) + " out of range at ideal vertex " +
                                          std::to_string(k));
    const FacetPair chosen = pairs[c.axis[k]];
    pairs.erase(pairs.begin() + c.axis[k]);
    out.filling_pairs.push_back(chosen);
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < pairs.size(); ++t) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      FacetSet s{chosen.first, chosen.second};
      std::uint64_t x = code;
      for (const auto& pr : pairs) {
        if (x % 3 == 1) s.push_back(pr.first);
        if (x % 3 == 2) s.push_back(pr.second);
        x /= 3;
      }
      const int rank = n - static_cast<int>(s.size());
      faces.push_back({rank, std::move(s), code == 0 ? FaceMark::filling : FaceMark::real});
    }
  }
  out.lattice = FaceLattice(n, p.facet_count(), std::move(faces));
  for (auto [a, b] : out.filling_pairs) out.filling_faces.push_back(static_cast<std::size_t>(out.lattice.find({a, b})));
  return out;
}

/// (n-1)^{#ideal} choices in lexicographic order.
inline std::vector<FillingChoice> all_filling_choices(const IdealPolytope& p) {
  const std::size_t k = p.ideal_vertices.size();
  const auto axes = static_cast<std::uint32_t>(p.n() - 1);
  std::vector<FillingChoice> out;
  FillingChoice c{std::vector<std::uint32_t>(k, 0)};
  for (;;) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c.axis[i - 1] + 1 == axes) c.axis[--i] = 0;
    if (i == 0) break;
    ++c.axis[i - 1];
  }
  return out;
}

/// Antipodal pairs of facet `f` of G: vertex pairs of the facet joined by no edge. Sorted.
inline std::vector<FacetPair> antipodal_pairs(const FaceLattice& g, std::uint32_t f) {
  const auto vs = vertex_sets(g);
  const std::size_t fi = g.rank_range(g.rank() - 1).first + f;
  std::set<FacetPair> edges;
  auto [eb, ee] = g.rank_range(1);
  for (std::size_t e = eb; e < ee; ++e) edges.emplace(vs[e][0], vs[e][1]);
  std::vector<FacetPair> out;
  const auto& v = vs[fi];
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (!edges.count({v[a], v[b]})) out.emplace_back(v[a], v[b]);
  return out;
}

/// The lexicographically least diagonal on every cross-polytope facet.
inline DiagonalChoice auto_diagonals(const GossetPolytope& g) {
  return DiagonalChoice{std::vector<std::uint32_t>(g.lattice.facet_count(), 0)};
}

/// Triangulates every cross-polytope facet of G^n along its chosen diagonal
/// {p, q}: the simplices are {p, q} plus one vertex from each remaining
/// antipodal pair, 2^{n-2} of them. Simplex facets pass through. Vertices of
/// the result are the vertices of G (lattice order).
inline SimplicialComplex subdivide_cross_facets(const GossetPolytope& g, const DiagonalChoice& d) {
  const FaceLattice& lat = g.lattice;
  require(d.diagonal.size() == lat.facet_count(), "diagonal choice must have one entry per facet");
  const auto vs = vertex_sets(lat);
  std::set<FacetPair> edges;
  auto [eb, ee] = lat.rank_range(1);
  for (std::size_t e = eb; e < ee; ++e) edges.emplace(vs[e][0], vs[e][1]);
  const std::size_t fb = lat.rank_range(lat.rank() - 1).first;
  std::vector<Simplex> top;
  for (std::uint32_t f = 0; f < lat.facet_count(); ++f) {
    const auto& v = vs[fb + f];
    if (g.facet_kinds[f] == FacetKind::simplex) {
      require(v.size() == static_cast<std::size_t>(lat.rank()), "simplex facet with the wrong vertex count");
      top.push_back(v);
      continue;
    }
    std::vector<FacetPair> pairs;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b)
        if (!edges.count({v[a], v[b]})) pairs.emplace_back(v[a], v[b]);
    require(pairs.size() * 2 == v.size(), "facet " + std::to_string(f) + " is not a cross-polytope");
    require(d.diagonal[f] < pairs.size(), "diagonal index out of range on facet " + std::to_string(f));
    const FacetPair diag = pairs[d.diagonal[f]];
    pairs.erase(pairs.begin() + d.diagonal[f]);
    for (std::uint64_t mask = 0; mask < (1ULL << pairs.size()); ++mask) {
      Simplex s{diag.first, diag.second};
      for (std::size_t t = 0; t < pairs.size(); ++t) s.push_back(mask >> t & 1 ? pairs[t].second : pairs[t].first);
      std::sort(s.begin(), s.end());
      top.push_back(std::move(s));
    }
  }
  return build_simplicial(static_cast<std::uint32_t>(lat.count(0)), std::move(top));
}

/// The diagonal choice matching a filling choice. The facets of P through an
/// ideal vertex are the vertices of the dual cross-polytope facet of G, and
/// opposite cube facets are antipodal vertices, so both sides index the same
/// sorted pair list and the axis carries over unchanged.
inline DiagonalChoice corresponding_diagonals(const GossetPolytope& g, const IdealPolytope& p, const FillingChoice& c) {
  require(c.axis.size() == p.ideal_vertices.size(), "filling choice does not match the ideal vertices");
  DiagonalChoice d{std::vector<std::uint32_t>(g.lattice.facet_count(), 0)};
  const auto vs = vertex_sets(g.lattice);
  const std::size_t fb = g.lattice.rank_range(g.n - 1).first;
  std::map<FacetSet, std::uint32_t> facet_by_vertices;
  for (std::uint32_t f = 0; f < g.lattice.facet_count(); ++f) facet_by_vertices[vs[fb + f]] = f;
  for (std::size_t k = 0; k < p.ideal_vertices.size(); ++k) {
    const auto& star = p.lattice.faces()[p.ideal_vertices[k]].facets;
    auto it = facet_by_vertices.find(star);
    require(it != facet_by_vertices.end(), "ideal vertex has no dual cross-polytope facet");
    d.diagonal[it->second] = c.axis[k];
  }
  return d;
}

/// Remark-level consistency: the dual of the filled polytope is the
/// subdivided complex. The comparison respects labels (facet i of P̄ is
/// vertex i of K), so non-corresponding choices are told apart even when the
/// two complexes happen to be abstractly isomorphic.
inline bool duality_check(const FaceLattice& pbar, const SimplicialComplex& k) {
  if (pbar.facet_count() != k.vertex_count()) return false;
  SimplicialComplex dual;
  try {
    dual = dualize(pbar);
  } catch (const ValidationError&) {
    return false;
  }
  return dual == k;
}

/// Abstract version: dualize(P̄) ≅ K by some vertex bijection.
inline bool duality_check_up_to_isomorphism(const FaceLattice& pbar, const SimplicialComplex& k) {
  if (pbar.facet_count() != k.vertex_count() || !is_simple(pbar)) return false;
  return isomorphic(dualize(pbar), k).has_value();
}

}  // namespace cuspforge
