#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cuspforge/algebra/int_matrix.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/face_lattice.hpp"

namespace cuspforge {

enum class FacetKind : std::uint8_t { simplex, cross };

/// Gosset polytope G^n: face lattice plus facet typing. Cross-polytope facets
/// carry FaceMark::ideal since they are dual to the ideal vertices of P^n.
/// `coordinates[v]` gives an integer position of vertex v (lattice order) in
/// whatever linear coordinates the generator used.
struct GossetPolytope {
  int n = 0;
  FaceLattice lattice;
  std::vector<FacetKind> facet_kinds;
  std::vector<std::vector<std::int64_t>> coordinates;

  std::size_t count(FacetKind k) const {
    return static_cast<std::size_t>(std::count(facet_kinds.begin(), facet_kinds.end(), k));
  }
};

/// A polytope with ideal vertices (P^n), in facet-incidence encoding.
struct IdealPolytope {
  FaceLattice lattice;
  /// Face indices (rank 0) of the ideal vertices.
  std::vector<std::size_t> ideal_vertices;
  /// Pairs i < j of facets sharing a ridge.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> facet_adjacency;

  int n() const noexcept { return lattice.rank(); }
  std::uint32_t facet_count() const noexcept { return lattice.facet_count(); }
  std::vector<std::size_t> real_vertices() const {
    std::vector<std::size_t> out;
    auto [b, e] = lattice.rank_range(0);
    for (std::size_t i = b; i < e; ++i)
      if (lattice.faces()[i].mark != FaceMark::ideal) out.push_back(i);
    return out;
  }
};

/// Right-angled Coxeter group data: one generator per facet, commuting
/// generators for adjacent facets.
struct RACGData {
  std::uint32_t facet_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> commuting_pairs;
};

/// Vertex coordinates and facet vertex lists of G^n, before the face
/// lattice is built. Enough for facet typing and the cusp census.
struct GossetFacets {
  int n = 0;
  std::vector<std::vector<std::int64_t>> coordinates;
  std::vector<std::vector<std::uint32_t>> facets;

  FacetKind kind(std::size_t f) const {
    return facets[f].size() == static_cast<std::size_t>(n) ? FacetKind::simplex : FacetKind::cross;
  }
  std::size_t count(FacetKind k) const {
    std::size_t c = 0;
    for (std::size_t f = 0; f < facets.size(); ++f) c += kind(f) == k;
    return c;
  }
};

namespace detail {

using Point = std::vector<std::int64_t>;

// Generalized cross product of d-1 vectors in Z^d: a normal to their span.
inline Point cross_product(const std::vector<Point>& vs, std::size_t d) {
  Point normal(d);
  for (std::size_t i = 0; i < d; ++i) {
    IntMatrix minor(d - 1, d - 1);
    for (std::size_t r = 0; r + 1 < d; ++r)
      for (std::size_t c = 0, cc = 0; c < d; ++c) {
        if (c == i) continue;
        minor(r, cc++) = vs[r][c];
      }
    BigInt det = determinant(minor);
    normal[i] = ((i % 2 == 0) ? det : BigInt(-det)).convert_to<std::int64_t>();
  }
  return normal;
}

inline std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Facets of the convex hull of a full-dimensional integer point set, by
// supporting hyperplanes through d-subsets. Each facet is the sorted list of
// points on it.
inline std::vector<std::vector<std::uint32_t>> hull_facets(const std::vector<Point>& pts) {
  const std::size_t d = pts.front().size();
  const std::size_t m = pts.size();
  std::set<std::vector<std::uint32_t>> found;
  std::vector<std::uint32_t> pick(d);
  // Lexicographic d-subsets.
  for (std::size_t i = 0; i < d; ++i) pick[i] = static_cast<std::uint32_t>(i);
  for (;;) {
    std::vector<Point> diffs;
    for (std::size_t k = 1; k < d; ++k) {
      Point v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = pts[pick[k]][c] - pts[pick[0]][c];
      diffs.push_back(std::move(v));
    }
    Point normal = cross_product(diffs, d);
    if (std::any_of(normal.begin(), normal.end(), [](std::int64_t x) { return x != 0; })) {
      const std::int64_t level = dot(normal, pts[pick[0]]);
      bool below = false, above = false;
      std::vector<std::uint32_t> on;
      for (std::size_t p = 0; p < m; ++p) {
        std::int64_t v = dot(normal, pts[p]);
        if (v < level) below = true;
        if (v > level) above = true;
        if (v == level) on.push_back(static_cast<std::uint32_t>(p));
      }
      if (!(below && above)) found.insert(std::move(on));
    }
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == m - d + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {found.begin(), found.end()};
}

// T-shaped Coxeter diagram with arms of length 1, 2 and n-4 from a branch
// node: A4, D5, E6, E7, E8 for n = 4..8. Nodes: 0 branch, 1 short arm,
// 2-3 medium arm (3 is the end), 4.. long arm.
struct TDiagram {
  int n = 0;
  std::vector<std::vector<int>> cartan;
  int ring = 0, short_end = 1, medium_end = 3;
};

inline TDiagram t_diagram(int n) {
  require(n >= 4 && n <= 8, "weight-orbit generator covers 4 <= n <= 8");
  TDiagram t;
  t.n = n;
  t.cartan.assign(n, std::vector<int>(n, 0));
  auto link = [&](int a, int b) { t.cartan[a][b] = t.cartan[b][a] = -1; };
  for (int i = 0; i < n; ++i) t.cartan[i][i] = 2;
  link(0, 1);
  link(0, 2);
  link(2, 3);
  for (int i = 4; i < n; ++i) link(i == 4 ? 0 : i - 1, i);
  t.ring = n == 4 ? 0 : n - 1;
  return t;
}

// Orbit of a weight (Dynkin labels) under the Weyl group, sorted.
inline std::vector<std::vector<int>> weyl_orbit(const TDiagram& t, std::vector<int> start) {
  std::set<std::vector<int>> seen{start};
  std::deque<std::vector<int>> queue{start};
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (int i = 0; i < t.n; ++i) {
      if (w[i] == 0) continue;
      auto r = w;
      for (int j = 0; j < t.n; ++j) r[j] -= w[i] * t.cartan[i][j];
      if (seen.insert(r).second) queue.push_back(std::move(r));
    }
  }
  return {seen.begin(), seen.end()};
}

// det(A) * A^{-1}: an integer Gram matrix for the weight inner product.
inline std::vector<std::vector<std::int64_t>> weight_gram(const TDiagram& t) {
  const std::size_t n = static_cast<std::size_t>(t.n);
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = t.cartan[r][c];
        }
        ++rr;
      }
      BigInt cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      g[i][j] = cof.convert_to<std::int64_t>();
    }
  return g;
}

// Vertex sets are keyed as 256-bit masks (at most 240 vertices).
using VertexKey = std::array<std::uint64_t, 4>;

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : k) h = (h ^ w) * 0xff51afd7ed558ccdULL, h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

// Antipodal pairs of a cross-polytope facet: u, w with |F|(u + w) = 2 sum(F).
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> antipodal_pairs(const std::vector<Point>& coords,
                                                                           const std::vector<std::uint32_t>& facet) {
  const std::size_t d = coords.front().size();
  Point sum(d, 0);
  for (auto v : facet)
    for (std::size_t c = 0; c < d; ++c) sum[c] += coords[v][c];
  const auto size = static_cast<std::int64_t>(facet.size());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<bool> used(facet.size(), false);
  for (std::size_t a = 0; a < facet.size(); ++a) {
    if (used[a]) continue;
    for (std::size_t b = a + 1; b < facet.size(); ++b) {
      if (used[b]) continue;
      bool opposite = true;
      for (std::size_t c = 0; c < d && opposite; ++c)
        opposite = size * (coords[facet[a]][c] + coords[facet[b]][c]) == 2 * sum[c];
      if (opposite) {
        used[a] = used[b] = true;
        pairs.emplace_back(facet[a], facet[b]);
        break;
      }
    }
    if (!used[a]) throw ValidationError("cross-polytope facet without antipodal structure");
  }
  return pairs;
}

// Builds the face lattice of a polytope whose facets are simplices (n
// vertices) or cross-polytopes (2(n-1) vertices), from vertex coordinates
// and facet vertex lists.
inline GossetPolytope assemble_gosset(const GossetFacets& data) {
  const int n = data.n;
  const auto& coords = data.coordinates;
  auto facets = data.facets;
  require(coords.size() <= 256, "too many vertices");
  std::sort(facets.begin(), facets.end(), [&](const auto& a, const auto& b) {
    // Simplices first, then cross-polytopes; lexicographic within a type.
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  const std::size_t simplex_size = static_cast<std::size_t>(n);
  const std::size_t cross_size = static_cast<std::size_t>(2 * (n - 1));
  GossetPolytope g;
  g.n = n;
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> id;
  std::vector<FacetSet> containing;
  std::vector<int> rank_of;
  std::vector<std::uint32_t> single_vertex;  // per face: vertex if rank 0
  auto visit = [&](const VertexKey& key, int rank, std::uint32_t facet, std::uint32_t some_vertex) {
    auto [it, fresh] = id.try_emplace(key, static_cast<std::uint32_t>(containing.size()));
    if (fresh) {
      containing.emplace_back();
      rank_of.push_back(rank);
      single_vertex.push_back(some_vertex);
    }
    containing[it->second].push_back(facet);
  };
  auto key_of = [](const std::vector<std::uint32_t>& vs) {
    VertexKey k{0, 0, 0, 0};
    for (auto v : vs) k[v >> 6] |= 1ULL << (v & 63);
    return k;
  };
  for (std::uint32_t j = 0; j < facets.size(); ++j) {
    const auto& f = facets[j];
    if (f.size() == simplex_size) {
      g.facet_kinds.push_back(FacetKind::simplex);
      for (std::uint32_t mask = 1; mask + 1 < (1u << f.size()); ++mask) {
        std::vector<std::uint32_t> sub;
        for (std::size_t t = 0; t < f.size(); ++t)
          if (mask >> t & 1) sub.push_back(f[t]);
        visit(key_of(sub), static_cast<int>(sub.size()) - 1, j, sub.front());
      }
    } else if (f.size() == cross_size) {
      g.facet_kinds.push_back(FacetKind::cross);
      auto pairs = antipodal_pairs(coords, f);
      const std::size_t k = pairs.size();
      std::uint64_t total = 1;
      for (std::size_t t = 0; t < k; ++t) total *= 3;
      for (std::uint64_t code = 1; code < total; ++code) {
        std::vector<std::uint32_t> sub;
        std::uint64_t c = code;
        for (std::size_t t = 0; t < k; ++t, c /= 3) {
          if (c % 3 == 1) sub.push_back(pairs[t].first);
          if (c % 3 == 2) sub.push_back(pairs[t].second);
        }
        visit(key_of(sub), static_cast<int>(sub.size()) - 1, j, sub.front());
      }
    } else {
      throw ValidationError("facet with " + std::to_string(f.size()) + " vertices is neither a simplex nor a cross-polytope");
    }
    visit(key_of(f), n - 1, j, f.front());
  }
  std::vector<Face> faces;
  faces.reserve(containing.size());
  std::map<FacetSet, std::uint32_t> vertex_by_facets;
  for (std::size_t i = 0; i < containing.size(); ++i) {
    FaceMark mark = FaceMark::real;
    if (rank_of[i] == n - 1 && g.facet_kinds[containing[i][0]] == FacetKind::cross) mark = FaceMark::ideal;
    if (rank_of[i] == 0) vertex_by_facets[containing[i]] = single_vertex[i];
    faces.push_back({rank_of[i], std::move(containing[i]), mark});
  }
  g.lattice = FaceLattice(n, static_cast<std::uint32_t>(facets.size()), std::move(faces));
  auto [vb, ve] = g.lattice.rank_range(0);
  for (std::size_t v = vb; v < ve; ++v) g.coordinates.push_back(coords[vertex_by_facets.at(g.lattice.faces()[v].facets)]);
  require(g.coordinates.size() == coords.size(), "some vertex lies in no facet");
  return g;
}

inline GossetFacets hull_gosset_facets(int n) {
  std::vector<Point> pts;
  if (n == 3) {
    for (std::int64_t z : {0, 1})
      for (auto [x, y] : std::vector<std::pair<std::int64_t, std::int64_t>>{{0, 0}, {1, 0}, {0, 1}})
        pts.push_back({x, y, z});
  } else if (n == 4) {
    // Edge midpoints of the 4-simplex: e_i + e_j in Z^5, last coordinate dropped.
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) {
        Point p(4, 0);
        if (i < 4) p[i] = 1;
        if (j < 4) p[j] = 1;
        pts.push_back(p);
      }
  } else if (n == 5) {
    // Even-sign vertices of the 5-cube.
    for (int mask = 0; mask < 32; ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
      Point p(5);
      for (int i = 0; i < 5; ++i) p[i] = (mask >> i & 1) ? -1 : 1;
      pts.push_back(p);
    }
  } else {
    throw ValidationError("hull generator covers 3 <= n <= 5");
  }
  auto facets = hull_facets(pts);
  return GossetFacets{n, std::move(pts), std::move(facets)};
}

}  // namespace detail

/// G^n by the weight-orbit method (4 <= n <= 8): vertices are the Weyl orbit
/// of the fundamental weight at the end of the long arm (at the branch node
/// for n = 4); simplex facets maximize the inner product with the orbit of
/// the short-arm weight, cross-polytope facets with the orbit of the
/// medium-arm end weight.
inline GossetFacets orbit_gosset_facets(int n) {
  const auto t = detail::t_diagram(n);
  const auto gram = detail::weight_gram(t);
  auto fundamental = [&](int node) {
    std::vector<int> w(n, 0);
    w[node] = 1;
    return w;
  };
  const auto verts = detail::weyl_orbit(t, fundamental(t.ring));
  std::vector<detail::Point> coords;
  for (const auto& v : verts) coords.emplace_back(v.begin(), v.end());
  std::vector<std::vector<std::uint32_t>> facets;
  for (int node : {t.short_end, t.medium_end}) {
    for (const auto& y : detail::weyl_orbit(t, fundamental(node))) {
      std::vector<std::int64_t> gy(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gy[i] += gram[i][j] * y[j];
      std::int64_t best = INT64_MIN;
      std::vector<std::uint32_t> on;
      for (std::uint32_t v = 0; v < coords.size(); ++v) {
        std::int64_t ip = detail::dot(coords[v], gy);
        if (ip > best) {
          best = ip;
          on.clear();
        }
        if (ip == best) on.push_back(v);
      }
      facets.push_back(std::move(on));
    }
  }
  return GossetFacets{n, std::move(coords), std::move(facets)};
}

inline GossetPolytope gosset_weight_orbit(int n) { return detail::assemble_gosset(orbit_gosset_facets(n)); }

/// Facet data of G^n: exact hull enumeration for n <= 5, weight orbits above.
inline GossetFacets gosset_facets(int n) {
  if (n < 3 || n > 8) throw ValidationError("gosset: n must lie in 3..8, got " + std::to_string(n));
  if (n <= 5) return detail::hull_gosset_facets(n);
  return orbit_gosset_facets(n);
}

/// G^n for 3 <= n <= 8 with its full face lattice.
inline GossetPolytope gosset(int n) { return detail::assemble_gosset(gosset_facets(n)); }

/// Checks that an externally supplied lattice has the shape of G^n and
/// recovers the facet typing. Cross-polytope facets must have every vertex
/// paired with exactly one non-adjacent vertex. The quadratic lattice test
/// runs only below `lattice_check_limit` faces.
inline GossetPolytope validate_gosset(FaceLattice lattice, std::size_t lattice_check_limit = 20000) {
  const int n = lattice.rank();
  require(n >= 3 && n <= 8, "ingested lattice rank must lie in 3..8");
  require(satisfies_euler_relation(lattice), "ingested lattice violates the Euler relation");
  if (lattice.faces().size() <= lattice_check_limit) require(is_lattice(lattice), "ingested face poset is not a lattice");
  auto [rb, re] = lattice.rank_range(n - 2);
  for (std::size_t i = rb; i < re; ++i) require(lattice.faces()[i].facets.size() == 2, "ridge not in exactly two facets");
  GossetPolytope g;
  g.n = n;
  const auto vs = vertex_sets(lattice);
  auto [fb, fe] = lattice.rank_range(n - 1);
  auto [eb, ee] = lattice.rank_range(1);
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::size_t e = eb; e < ee; ++e) {
    require(vs[e].size() == 2, "edge without two vertices");
    edges.emplace(vs[e][0], vs[e][1]);
  }
  std::vector<Face> faces = lattice.faces();
  for (std::size_t f = fb; f < fe; ++f) {
    const auto& v = vs[f];
    if (v.size() == static_cast<std::size_t>(n)) {
      g.facet_kinds.push_back(FacetKind::simplex);
      faces[f].mark = FaceMark::real;
      continue;
    }
    require(v.size() == static_cast<std::size_t>(2 * (n - 1)), "facet is neither a simplex nor a cross-polytope");
    for (auto a : v) {
      int missing = 0;
      for (auto b : v)
        if (a != b && !edges.count({std::min(a, b), std::max(a, b)})) ++missing;
      require(missing == 1, "cross-polytope facet without antipodal structure");
    }
    g.facet_kinds.push_back(FacetKind::cross);
    faces[f].mark = FaceMark::ideal;
  }
  g.lattice = FaceLattice(n, lattice.facet_count(), std::move(faces));
  return g;
}

/// The n-cube [-1,1]^n; facet 2i is x_i = -1 and facet 2i+1 is x_i = +1.
inline FaceLattice cube_polytope(int n) {
  require(n >= 1 && n <= 12, "cube dimension must lie in 1..12");
  std::vector<Face> faces;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    Face f;
    std::uint64_t x = code;
    for (int i = 0; i < n; ++i, x /= 3)
      if (x % 3) f.facets.push_back(static_cast<std::uint32_t>(2 * i + x % 3 - 1));
    if (f.facets.empty()) continue;
    f.rank = n - static_cast<int>(f.facets.size());
    faces.push_back(std::move(f));
  }
  return FaceLattice(n, static_cast<std::uint32_t>(2 * n), std::move(faces));
}

/// Wraps a lattice whose ideal vertices are already marked.
inline IdealPolytope ideal_polytope(FaceLattice lattice) {
  IdealPolytope p;
  p.lattice = std::move(lattice);
  p.ideal_vertices = p.lattice.ideal_vertices();
  auto [b, e] = p.lattice.rank_range(p.lattice.rank() - 2);
  for (std::size_t i = b; i < e; ++i) {
    const auto& s = p.lattice.faces()[i].facets;
    require(s.size() == 2, "ridge of the dual is not in exactly two facets");
    p.facet_adjacency.emplace_back(s[0], s[1]);
  }
  for (auto v : p.ideal_vertices)
    require(p.lattice.faces()[v].facets.size() == static_cast<std::size_t>(2 * (p.n() - 1)),
            "ideal vertex not in 2(n-1) facets");
  return p;
}

/// P^n: the polar of G^n, ideal vertices dual to cross-polytope facets.
inline IdealPolytope ideal_dual(const GossetPolytope& g) { return ideal_polytope(polar(g.lattice)); }

inline RACGData racg_data(const IdealPolytope& p) { return {p.facet_count(), p.facet_adjacency}; }

inline RACGData racg_data(const FaceLattice& p) {
  RACGData r{p.facet_count(), {}};
  auto [b, e] = p.rank_range(p.rank() - 2);
  for (std::size_t i = b; i < e; ++i) {
    const auto& s = p.faces()[i].facets;
    if (s.size() == 2) r.commuting_pairs.emplace_back(s[0], s[1]);
  }
  return r;
}

/// RACG of P^n straight from G^n facet data. Facets of P are vertices of G,
/// adjacent when they span an edge: the smallest face of G containing both,
/// the meet of the facets through them, has no other vertex.
inline RACGData racg_data(const GossetFacets& g) {
  const auto nv = static_cast<std::uint32_t>(g.coordinates.size());
  std::vector<std::vector<std::uint32_t>> through(nv);
  for (std::uint32_t f = 0; f < g.facets.size(); ++f)
    for (auto v : g.facets[f]) through[v].push_back(f);
  RACGData r{nv, {}};
  std::vector<std::uint32_t> common;
  for (std::uint32_t a = 0; a < nv; ++a)
    for (std::uint32_t b = a + 1; b < nv; ++b) {
      common.clear();
      std::set_intersection(through[a].begin(), through[a].end(), through[b].begin(), through[b].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      std::vector<std::uint32_t> meet = g.facets[common[0]];
      std::sort(meet.begin(), meet.end());
      for (std::size_t i = 1; i < common.size() && meet.size() > 2; ++i) {
        auto other = g.facets[common[i]];
        std::sort(other.begin(), other.end());
        std::vector<std::uint32_t> next;
        std::set_intersection(meet.begin(), meet.end(), other.begin(), other.end(), std::back_inserter(next));
        meet.swap(next);
      }
      if (meet.size() == 2) r.commuting_pairs.emplace_back(a, b);
    }
  return r;
}

/// Rank of the abelianization of the right-angled Coxeter group, as a
/// Z/2-vector space. Abelianizing, s_i^2 = 1 gives 2e_i and every commutator
/// gives the zero relation, so the invariant factors are all 2.
inline std::size_t abelianization_rank(const RACGData& r) {
  SparseIntMatrix rel(r.facet_count, r.facet_count + r.commuting_pairs.size());
  for (std::uint32_t i = 0; i < r.facet_count; ++i) rel.columns[i].emplace_back(i, 2);
  const auto factors = invariant_factors(rel);
  require(factors.size() == r.facet_count, "abelianization has a free part");
  return static_cast<std::size_t>(std::count(factors.begin(), factors.end(), BigInt(2)));
}

}  // namespace cuspforge
