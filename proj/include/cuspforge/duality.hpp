#pragma once

#include <map>
#include <string>
#include <vector>

#include "cuspforge/face_lattice.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

/// Dual simplicial complex of a simple polytope: one vertex per facet, one
/// top simplex per vertex (its facet set).
inline SimplicialComplex dualize(const FaceLattice& p) {
  auto [b, e] = p.rank_range(0);
  std::vector<Simplex> top;
  for (std::size_t i = b; i < e; ++i) {
    const auto& f = p.faces()[i];
    if (static_cast<int>(f.facets.size()) != p.rank())
      throw ValidationError("non-simple vertex: lies in " + std::to_string(f.facets.size()) + " facets, expected " +
                            std::to_string(p.rank()));
    top.push_back(f.facets);
  }
  return SimplicialComplex::from_facets(p.facet_count(), std::move(top));
}

/// Every (d-1)-face lies in exactly two d-faces.
inline bool is_closed_pseudomanifold(const SimplicialComplex& k) {
  if (k.dim() < 0 || !k.is_pure()) return false;
  std::map<Simplex, int> ridges;
  for (const auto& f : k.facets())
    for (std::size_t i = 0; i < f.size(); ++i) {
      Simplex r;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (j != i) r.push_back(f[j]);
      ++ridges[r];
    }
  for (const auto& [r, n] : ridges)
    if (n != 2) return false;
  return true;
}

/// Inverse of dualize(): the simple polytope boundary whose faces are the
/// simplices of K (codimension = simplex size).
inline FaceLattice dualize_complex(const SimplicialComplex& k) {
  require(k.dim() >= 0 && k.is_pure(), "complex is not pure");
  require(is_closed_pseudomanifold(k), "complex is not a closed pseudomanifold");
  const int n = k.dim() + 1;
  const auto used = k.used_vertices();
  require(used.size() == k.vertex_count(), "complex has unused vertices");
  std::vector<Face> faces;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.faces(d)) faces.push_back({n - static_cast<int>(s.size()), s, FaceMark::real});
  return FaceLattice(n, k.vertex_count(), std::move(faces));
}

}  // namespace cuspforge
