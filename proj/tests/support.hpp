#pragma once
// Small fixtures and random generators shared by the unit tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "cuspforge.hpp"

namespace testkit {

using namespace cuspforge;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed);
  return g;
}

inline std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng());
}

inline std::vector<std::uint32_t> random_permutation(std::uint32_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::shuffle(p.begin(), p.end(), rng());
  return p;
}

/// Boundary of the (d+1)-simplex on d+2 vertices.
inline SimplicialComplex simplex_boundary(std::uint32_t d) {
  std::vector<Simplex> top;
  for (std::uint32_t skip = 0; skip < d + 2; ++skip) {
    Simplex s;
    for (std::uint32_t v = 0; v < d + 2; ++v)
      if (v != skip) s.push_back(v);
    top.push_back(s);
  }
  return SimplicialComplex::from_facets(d + 2, top);
}

/// Boundary of the d-dimensional cross-polytope; vertices 2i and 2i+1 are antipodal.
inline SimplicialComplex cross_boundary(std::uint32_t d) {
  std::vector<Simplex> top;
  for (std::uint32_t pick = 0; pick < (1u << d); ++pick) {
    Simplex s;
    for (std::uint32_t i = 0; i < d; ++i) s.push_back(2 * i + ((pick >> i) & 1));
    top.push_back(s);
  }
  return SimplicialComplex::from_facets(2 * d, top);
}

inline SimplicialComplex octahedron() { return cross_boundary(3); }

inline SimplicialComplex relabel(const SimplicialComplex& k, const std::vector<std::uint32_t>& p) {
  std::vector<Simplex> top;
  for (const auto& f : k.facets()) {
    Simplex s;
    for (auto v : f) s.push_back(p[v]);
    top.push_back(s);
  }
  return SimplicialComplex::from_facets(k.vertex_count(), top);
}

/// Random complex with up to `max_facets` facets of size 1..max_size.
inline SimplicialComplex random_complex(std::uint32_t vertices, std::size_t max_facets, std::size_t max_size) {
  std::vector<Simplex> top;
  const std::size_t count = uniform(1, max_facets);
  for (std::size_t i = 0; i < count; ++i) {
    auto p = random_permutation(vertices);
    p.resize(uniform(1, std::min<std::size_t>(max_size, vertices)));
    top.push_back(p);
  }
  return SimplicialComplex::from_facets(vertices, top);
}

/// Coordinates of a cube complex permuted by p (coordinate i goes to p[i]).
inline CubicalComplex permute_coordinates(const CubicalComplex& z, const std::vector<std::uint32_t>& p) {
  auto move = [&](std::uint64_t bits) {
    std::uint64_t out = 0;
    for (std::uint32_t i = 0; i < p.size(); ++i)
      if (bits >> i & 1) out |= 1ULL << p[i];
    return out;
  };
  std::vector<CubeCell> cells;
  for (const auto& c : z.cells()) cells.push_back({move(c.support), move(c.signs)});
  std::vector<std::uint64_t> q;
  for (auto g : z.quotient_generators()) q.push_back(move(g));
  return CubicalComplex::from_cells(z.ambient_rank(), cells, q);
}

inline CubicalComplex torus2() { return colour_manifold(cube_polytope(2), Colouring::distinct(4)); }

/// Square with colours e1, e1, e2, e1+e2 on facets x0=-1, x0=+1, x1=-1, x1=+1.
inline CubicalComplex klein_bottle() { return colour_manifold(cube_polytope(2), Colouring{2, {1, 1, 2, 3}}); }

inline CubicalComplex torus3() { return real_moment_angle(octahedron()); }

/// P³ filled along the choice that produces the cube.
inline FilledPolytope cube_filling(const IdealPolytope& p) {
  const auto cube = dualize(cube_polytope(p.n()));
  for (const auto& c : all_filling_choices(p)) {
    auto f = dehn_fill(p, c);
    if (is_simple(f.lattice) && isomorphic(dualize(f.lattice), cube)) return f;
  }
  throw std::runtime_error("no filling choice gives the cube");
}

}  // namespace testkit
