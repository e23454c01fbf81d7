#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/algebra/chain_complex.hpp"
#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/algebra/homology.hpp"
#include "cuspforge/algebra/int_matrix.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/face_lattice.hpp"
#include "cuspforge/filling.hpp"
#include "cuspforge/isomorphism.hpp"
#include "cuspforge/polytope_zoo.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

/// Facet colours in (Z/2)^rank, one bitmask per facet.
struct Colouring {
  unsigned rank = 0;
  std::vector<std::uint64_t> colour;

  /// lambda(i) = e_i.
  static Colouring distinct(std::uint32_t facets) {
    Colouring c{facets, {}};
    for (std::uint32_t i = 0; i < facets; ++i) c.colour.push_back(1ULL << i);
    return c;
  }
  bool is_distinct() const {
    if (rank != colour.size()) return false;
    for (std::size_t i = 0; i < colour.size(); ++i)
      if (colour[i] != (1ULL << i)) return false;
    return true;
  }
};

namespace detail {

inline std::uint64_t mask_of(const std::vector<std::uint32_t>& s) {
  std::uint64_t m = 0;
  for (auto i : s) {
    require(i < 64, "index above 63 does not fit a cell mask");
    m |= 1ULL << i;
  }
  return m;
}

inline bool independent(const std::vector<std::uint64_t>& vectors) {
  std::vector<std::uint64_t> basis;
  for (auto v : vectors) {
    for (auto b : basis)
      if (v & std::bit_floor(b)) v ^= b;
    if (v == 0) return false;
    // Keep leading bits distinct.
    for (auto& b : basis)
      if (b & std::bit_floor(v)) b ^= v;
    basis.push_back(v);
    std::sort(basis.rbegin(), basis.rend());
  }
  return true;
}

// Kernel of Lambda: (Z/2)^f -> (Z/2)^k, e_i -> colour[i], as bitmasks over f.
inline std::vector<std::uint64_t> colouring_kernel(const Colouring& c) {
  const std::size_t f = c.colour.size();
  GF2Matrix lambda(c.rank, f);
  for (std::size_t i = 0; i < f; ++i)
    for (unsigned r = 0; r < c.rank; ++r)
      if (c.colour[i] >> r & 1) lambda.set(r, i);
  require(rank(lambda) == c.rank, "colouring does not span (Z/2)^k");
  std::vector<std::uint64_t> out;
  for (const auto& v : nullspace(lambda)) {
    std::uint64_t m = 0;
    for (std::size_t i = v.lowest(); i < f; i = v.next(i + 1)) m |= 1ULL << i;
    out.push_back(m);
  }
  return out;
}

// Cells (S, signs) for S in `supports`, one per orbit of the sign-flip
// group H: the free sign positions are the complement of S minus the leading
// bits of H projected there.
inline std::vector<CubeCell> orbit_cells(unsigned m, const std::vector<std::uint64_t>& supports,
                                         const std::vector<std::uint64_t>& quotient) {
  const std::uint64_t all = low_mask(m);
  std::vector<std::uint64_t> free_bits;
  std::size_t total = 0;
  const std::size_t budget = cell_budget();
  for (auto s : supports) {
    std::uint64_t fr = ~s & all;
    if (!quotient.empty())
      for (auto p : project_basis(quotient, ~s & all).projected) fr &= ~std::bit_floor(p);
    free_bits.push_back(fr);
    const int bits = std::popcount(fr);
    if (bits >= 62 || total + (std::size_t{1} << bits) > budget)
      throw BudgetExceeded("complex needs more than " + std::to_string(budget) + " cells (CUSPFORGE_BUDGET)");
    total += std::size_t{1} << bits;
  }
  std::vector<CubeCell> cells;
  cells.reserve(total);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    const std::uint64_t fr = free_bits[i];
    for (std::uint64_t sub = fr;; sub = (sub - 1) & fr) {
      cells.push_back({supports[i], sub});
      if (sub == 0) break;
    }
  }
  return cells;
}

inline std::vector<std::uint64_t> simplex_supports(const SimplicialComplex& k) {
  std::vector<std::uint64_t> out{0};
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.faces(d)) out.push_back(mask_of(s));
  return out;
}

}  // namespace detail

/// Sum over sigma in K ∪ {∅} of 2^{m-|sigma|}, exactly.
inline BigInt moment_angle_cell_count(const SimplicialComplex& k) {
  BigInt total = BigInt(1) << k.vertex_count();
  for (int d = 0; d <= k.dim(); ++d) total += BigInt(k.faces(d).size()) << (k.vertex_count() - d - 1);
  return total;
}

/// Sum over sigma in K ∪ {∅} of (-1)^{|sigma|} 2^{m-|sigma|}.
inline BigInt moment_angle_euler_characteristic(const SimplicialComplex& k) {
  BigInt chi = BigInt(1) << k.vertex_count();
  for (int d = 0; d <= k.dim(); ++d) {
    BigInt term = BigInt(k.faces(d).size()) << (k.vertex_count() - d - 1);
    chi += d % 2 == 0 ? BigInt(-term) : term;
  }
  return chi;
}

/// RZ_K: the cubes (sigma, signs on the complement) for sigma in K ∪ {∅}.
inline CubicalComplex real_moment_angle(const SimplicialComplex& k) {
  require(k.vertex_count() > 0, "moment-angle complex of an empty vertex set");
  require(k.vertex_count() <= 64, "more than 64 vertices");
  return CubicalComplex::from_cells(k.vertex_count(),
                                    detail::orbit_cells(k.vertex_count(), detail::simplex_supports(k), {}));
}

/// True iff at every face the colours of the facets through it are
/// linearly independent.
inline bool is_proper(const FaceLattice& p, const Colouring& c) {
  if (c.colour.size() != p.facet_count()) return false;
  for (auto x : c.colour)
    if (x == 0 || (c.rank < 64 && (x >> c.rank) != 0)) return false;
  for (const auto& f : p.faces()) {
    std::vector<std::uint64_t> cols;
    for (auto i : f.facets) cols.push_back(c.colour[i]);
    if (!detail::independent(cols)) return false;
  }
  return true;
}

namespace detail {

// Cells of the colouring construction whose support passes `keep`.
template <class Keep>
CubicalComplex colour_cells(const FaceLattice& p, const Colouring& c, Keep&& keep) {
  require(is_simple(p), "colouring construction needs a simple polytope");
  require(p.facet_count() <= 64, "more than 64 facets");
  require(is_proper(p, c), "improper colouring: dependent colours at some face");
  std::vector<std::uint64_t> quotient = c.is_distinct() ? std::vector<std::uint64_t>{} : colouring_kernel(c);
  std::vector<std::uint64_t> supports{0};
  for (const auto& f : p.faces()) supports.push_back(mask_of(f.facets));
  supports.erase(std::remove_if(supports.begin(), supports.end(), [&](std::uint64_t s) { return !keep(s); }),
                 supports.end());
  auto cells = orbit_cells(p.facet_count(), supports, quotient);
  return CubicalComplex::from_cells(p.facet_count(), std::move(cells), std::move(quotient));
}

}  // namespace detail

/// Colouring construction: (Z/2)^k copies of the cube dual of P, where the
/// copies g and h of a face are identified when g - h lies in the span of the
/// colours of the facets through it. Realized as RZ_{dual(P)} divided by the
/// kernel of the colouring map, which acts freely by sign flips; with
/// distinct colours nothing is divided out. The colours must span (Z/2)^k.
inline CubicalComplex colour_manifold(const FaceLattice& p, const Colouring& c) {
  return detail::colour_cells(p, c, [](std::uint64_t) { return true; });
}

/// Cusped model of M^n inside the filled manifold: the cells of
/// colour_manifold(P̄, distinct) dual to faces disjoint from the inserted
/// cubes, i.e. whose support contains no filling pair. M̄ minus the filling
/// tori deformation retracts onto it.
inline CubicalComplex cusped_manifold(const FilledPolytope& pbar) {
  std::vector<std::uint64_t> pairs;
  for (auto [a, b] : pbar.filling_pairs) pairs.push_back((1ULL << a) | (1ULL << b));
  return detail::colour_cells(pbar.lattice, Colouring::distinct(pbar.lattice.facet_count()), [&](std::uint64_t s) {
    return std::none_of(pairs.begin(), pairs.end(), [&](std::uint64_t q) { return (s & q) == q; });
  });
}

/// Facets meeting the filling cube of ideal vertex k (the former cube link).
inline std::uint64_t link_facets(const FilledPolytope& pbar, std::size_t k) {
  const auto [a, b] = pbar.filling_pairs.at(k);
  std::uint64_t m = 0;
  for (const auto& f : pbar.lattice.faces())
    if (std::binary_search(f.facets.begin(), f.facets.end(), a) && std::binary_search(f.facets.begin(), f.facets.end(), b))
      m |= detail::mask_of(f.facets);
  return m;
}

/// A cusp cross-section: the cells of the cusped model with support inside
/// the link facets A_v and fixed signs outside A_v.
struct CuspTorus {
  std::size_t ideal_index = 0;
  std::uint64_t link_facets = 0;
  std::uint64_t outside_signs = 0;
  CubicalComplex complex;
};

/// One torus per outside sign pattern for each link-facet mask.
inline std::vector<CuspTorus> cusp_tori(const CubicalComplex& m, const std::vector<std::uint64_t>& link_masks) {
  require(m.is_embedded(), "cusp tori are located in the distinct-colour model");
  const std::uint64_t all = low_mask(m.ambient_rank());
  std::vector<CuspTorus> out;
  for (std::size_t k = 0; k < link_masks.size(); ++k) {
    const std::uint64_t a = link_masks[k];
    std::set<std::uint64_t> supports;
    for (const auto& c : m.cells())
      if ((c.support & ~a) == 0) supports.insert(c.support);
    const std::uint64_t outside = all & ~a;
    for (std::uint64_t s = 0;; s = (s - outside) & outside) {
      std::vector<CubeCell> cells;
      for (auto sup : supports) {
        const std::uint64_t inside = a & ~sup;
        for (std::uint64_t t = inside;; t = (t - 1) & inside) {
          cells.push_back({sup, s | t});
          if (t == 0) break;
        }
      }
      for (const auto& c : cells) require(m.contains(c), "cusp section is not a subcomplex of the cusped model");
      out.push_back({k, a, s, CubicalComplex::from_cells(m.ambient_rank(), std::move(cells))});
      if (s == outside) break;
    }
  }
  return out;
}

inline std::vector<CuspTorus> cusp_tori(const CubicalComplex& m, const FilledPolytope& pbar) {
  std::vector<std::uint64_t> masks;
  for (std::size_t k = 0; k < pbar.filling_pairs.size(); ++k) masks.push_back(link_facets(pbar, k));
  return cusp_tori(m, masks);
}

/// Same tori located from the two complexes alone: the filling pairs are the
/// 2-element supports of N missing from M, and the link facets of a pair are
/// the union of the supports in N containing it.
inline std::vector<CuspTorus> cusp_tori(const CubicalComplex& m, const CubicalComplex& n) {
  require(m.ambient_rank() == n.ambient_rank() && n.is_embedded(), "filling and cusped model live in different cubes");
  std::set<std::uint64_t> in_m, pairs;
  for (const auto& c : m.cells()) in_m.insert(c.support);
  for (const auto& c : n.cells())
    if (c.dim() == 2 && !in_m.count(c.support)) pairs.insert(c.support);
  std::vector<std::uint64_t> masks;
  for (auto q : pairs) {
    std::uint64_t a = 0;
    for (const auto& c : n.cells())
      if ((c.support & q) == q) a |= c.support;
    masks.push_back(a);
  }
  return cusp_tori(m, masks);
}

struct CuspRecord {
  std::size_t ideal_vertex = 0;  // lattice index in P
  std::uint32_t incident_facets = 0;
  BigInt components;
  std::string cross_section;
};

struct CuspCensus {
  std::vector<CuspRecord> cusps;
  BigInt total;
};

/// Leading digits and exponent: "2.3e71".
inline std::string magnitude(const BigInt& x, int digits = 2) {
  std::string s = x.str();
  if (s.size() <= 1) return s + "e0";
  std::string out = s.substr(0, 1) + "." + s.substr(1, static_cast<std::size_t>(std::max(1, digits - 1)));
  return out + "e" + std::to_string(s.size() - 1);
}

/// All-distinct colours: ideal vertex v contributes 2^{f - m_v} cusps, m_v the
/// number of facets at v, each an (n-1)-torus.
inline CuspCensus cusp_census(const IdealPolytope& p) {
  CuspCensus c;
  c.total = 0;
  const auto f = p.facet_count();
  for (auto v : p.ideal_vertices) {
    const auto mv = static_cast<std::uint32_t>(p.lattice.faces()[v].facets.size());
    BigInt count = BigInt(1) << (f - mv);
    c.cusps.push_back({v, mv, count, "T^" + std::to_string(p.n() - 1)});
    c.total += count;
  }
  return c;
}

/// Same count read off G^n directly: the facets of P are the vertices of G
/// and its ideal vertices are the cross-polytope facets, so no face lattice
/// is needed. `ideal_vertex` holds the facet index in G.
inline CuspCensus cusp_census(const GossetFacets& g) {
  CuspCensus c;
  c.total = 0;
  const auto f = static_cast<std::uint32_t>(g.coordinates.size());
  for (std::size_t i = 0; i < g.facets.size(); ++i) {
    if (g.kind(i) != FacetKind::cross) continue;
    const auto mv = static_cast<std::uint32_t>(g.facets[i].size());
    BigInt count = BigInt(1) << (f - mv);
    c.cusps.push_back({i, mv, count, "T^" + std::to_string(g.n - 1)});
    c.total += count;
  }
  return c;
}

/// Explicit count for a general colouring: copies of P are indexed by
/// (Z/2)^k and the cusp at v joins copies differing by colours of facets at
/// v, so its components are the classes of a union-find over all 2^k copies.
inline CuspCensus cusp_census_explicit(const IdealPolytope& p, const Colouring& lambda) {
  require(lambda.colour.size() == p.facet_count(), "colouring has the wrong number of facets");
  const std::size_t budget = cell_budget();
  if (lambda.rank >= 40 || (std::size_t{1} << lambda.rank) > budget)
    throw BudgetExceeded("explicit cusp count needs 2^" + std::to_string(lambda.rank) + " copies");
  const std::size_t copies = std::size_t{1} << lambda.rank;
  CuspCensus c;
  c.total = 0;
  for (auto v : p.ideal_vertices) {
    std::vector<std::size_t> parent(copies);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    const auto& star = p.lattice.faces()[v].facets;
    for (std::size_t g = 0; g < copies; ++g)
      for (auto i : star) {
        auto a = find(g), b = find(g ^ lambda.colour[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::size_t comps = 0;
    for (std::size_t g = 0; g < copies; ++g)
      if (find(g) == g) ++comps;
    const bool torus = lambda.is_distinct();
    c.cusps.push_back({v, static_cast<std::uint32_t>(star.size()), BigInt(comps),
                       torus ? "T^" + std::to_string(p.n() - 1) : "flat " + std::to_string(p.n() - 1) + "-manifold"});
    c.total += comps;
  }
  return c;
}

/// Copies of the filling cube F of ideal vertex k in Z̄ (the 2-cells with
/// support {F1, F2}), grouped into connected components: two copies are
/// adjacent when they share a codimension-one face, i.e. both bound a 3-cell
/// with support {F1, F2, t}.
struct PreimageComponents {
  std::size_t copies = 0;
  std::vector<std::size_t> component_sizes;
  std::size_t count() const noexcept { return component_sizes.size(); }
};

inline PreimageComponents preimage_components(const CubicalComplex& zbar, const FilledPolytope& pbar, std::size_t k) {
  require(k < pbar.filling_pairs.size(), "not a filling face");
  require(zbar.is_embedded(), "preimage components are counted in the distinct-colour model");
  const auto [a, b] = pbar.filling_pairs[k];
  const std::uint64_t s = (1ULL << a) | (1ULL << b);
  std::vector<std::uint64_t> copies;  // sign vectors of the 2-cells
  for (const auto& c : zbar.cells())
    if (c.support == s) copies.push_back(c.signs);
  require(!copies.empty(), "filling face has no dual cells in the complex");
  std::sort(copies.begin(), copies.end());
  std::vector<std::size_t> parent(copies.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](std::uint64_t signs) {
    return static_cast<std::size_t>(std::lower_bound(copies.begin(), copies.end(), signs) - copies.begin());
  };
  for (const auto& c : zbar.cells()) {
    if (c.dim() != 3 || (c.support & s) != s) continue;
    const std::uint64_t t = c.support & ~s;
    auto x = find(index(c.signs)), y = find(index(c.signs | t));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::map<std::size_t, std::size_t> sizes;
  for (std::size_t i = 0; i < copies.size(); ++i) ++sizes[find(i)];
  PreimageComponents out;
  out.copies = copies.size();
  for (auto [root, size] : sizes) out.component_sizes.push_back(size);
  return out;
}

/// Integral homology sphere test that also requires every vertex link to be
/// a homology sphere of one dimension less (so RZ_K is a homology manifold).
inline bool is_homology_sphere(const SimplicialComplex& k) {
  const int d = k.dim();
  if (d < 0 || !k.is_pure()) return false;
  if (k.used_vertices().size() != k.vertex_count()) return false;
  if (d == 0) return k.vertex_count() == 2;
  auto h = homology(chain_complex_of(k, Coefficients::integers));
  for (int i = 0; i <= d; ++i) {
    const std::size_t expected = (i == 0 || i == d) ? 1 : 0;
    if (h.betti[i] != expected || !h.torsion[i].empty()) return false;
  }
  for (std::uint32_t v = 0; v < k.vertex_count(); ++v)
    if (!is_homology_sphere(link_of_vertex(k, v).complex)) return false;
  return true;
}

struct VertexLinkResult {
  std::uint64_t vertex_signs = 0;
  bool isomorphic_to_k = false;
  bool sphere = false;
};

struct ManifoldReport {
  bool k_is_sphere = false;
  std::vector<VertexLinkResult> vertices;
  bool pass() const {
    return k_is_sphere && !vertices.empty() &&
           std::all_of(vertices.begin(), vertices.end(), [](const auto& v) { return v.isomorphic_to_k && v.sphere; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(vertices.begin(), vertices.end(), [](const auto& v) { return !(v.isomorphic_to_k && v.sphere); }));
  }
};

/// Per vertex: is the link isomorphic to K, and is it a sphere. All passing
/// means the cube structure is locally that of R^n.
inline ManifoldReport manifold_check(const CubicalComplex& z, const SimplicialComplex& k) {
  ManifoldReport r;
  auto compact = [](const SimplicialComplex& c) {
    // Drop unused vertices so that ghost labels do not matter.
    auto used = c.used_vertices();
    std::vector<Simplex> facets = c.facets();
    for (auto& f : facets)
      for (auto& v : f) v = static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), v) - used.begin());
    return SimplicialComplex::from_facets(static_cast<std::uint32_t>(used.size()), std::move(facets));
  };
  const auto kc = compact(k);
  r.k_is_sphere = is_homology_sphere(kc);
  auto [b, e] = z.dim_range(0);
  std::map<std::vector<Simplex>, bool> sphere_cache;
  for (std::size_t i = b; i < e; ++i) {
    VertexLinkResult v;
    v.vertex_signs = z.cells()[i].signs;
    auto link = compact(link_of_vertex(z, v.vertex_signs));
    v.isomorphic_to_k = isomorphic(link, kc).has_value();
    auto it = sphere_cache.find(link.facets());
    if (it == sphere_cache.end()) it = sphere_cache.emplace(link.facets(), is_homology_sphere(link)).first;
    v.sphere = it->second;
    r.vertices.push_back(v);
  }
  return r;
}

}  // namespace cuspforge
