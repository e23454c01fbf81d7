#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/error.hpp"

namespace cuspforge {

/// A simplex is a strictly increasing list of vertex indices.
using Simplex = std::vector<std::uint32_t>;

/// Finite abstract simplicial complex on vertices 0..vertex_count-1, given by
/// its inclusion-maximal faces. All faces are materialized at construction,
/// sorted by dimension and then lexicographically.
class SimplicialComplex {
 public:
  /// The void complex: no vertices, no faces, dimension -1.
  SimplicialComplex() = default;

  /// Closes `facets` downward. Facets are sorted and deduplicated, and facets
  /// contained in other facets are dropped. Empty facets are ignored here;
  /// build_simplicial() rejects them.
  static SimplicialComplex from_facets(std::uint32_t vertex_count, std::vector<Simplex> facets);

  std::uint32_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Simplex>& facets() const noexcept { return facets_; }
  int dim() const noexcept { return static_cast<int>(faces_.size()) - 1; }

  /// Faces of dimension k (k+1 vertices), sorted.
  const std::vector<Simplex>& faces(int k) const;
  std::size_t face_count() const noexcept;
  /// Entry k is the number of k-dimensional faces.
  std::vector<std::size_t> f_vector() const;
  long long euler_characteristic() const;

  bool contains(const Simplex& s) const;
  /// Index of `s` within faces(s.size()-1), or -1.
  long index_of(const Simplex& s) const;
  /// Vertices that lie in at least one face.
  std::vector<std::uint32_t> used_vertices() const;

  bool is_pure() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertex_count_ == b.vertex_count_ && a.facets_ == b.facets_;
  }

 private:
  std::uint32_t vertex_count_ = 0;
  std::vector<Simplex> facets_;
  std::vector<std::vector<Simplex>> faces_;
};

/// Validated constructor: indices must be < vertex_count, facets nonempty.
inline SimplicialComplex build_simplicial(std::uint32_t vertex_count, std::vector<Simplex> facets) {
  require(!facets.empty(), "facet list is empty");
  for (const auto& f : facets) {
    require(!f.empty(), "empty facet");
    for (auto v : f)
      require(v < vertex_count, "vertex index " + std::to_string(v) + " out of range (vertex count " +
                                    std::to_string(vertex_count) + ")");
  }
  return SimplicialComplex::from_facets(vertex_count, std::move(facets));
}

/// A complex carried on a subset of another complex's vertices. `labels[i]`
/// is the original index of local vertex i.
struct LabelledComplex {
  SimplicialComplex complex;
  std::vector<std::uint32_t> labels;
};

/// Standard link lk(v) = { s \ {v} : v in s }, relabelled onto its own vertices.
LabelledComplex link_of_vertex(const SimplicialComplex& k, std::uint32_t v);

/// Full subcomplex spanned by `vertices` (kept in original labelling).
SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const std::vector<std::uint32_t>& vertices);

// ---------------------------------------------------------------------------

inline SimplicialComplex SimplicialComplex::from_facets(std::uint32_t vertex_count, std::vector<Simplex> facets) {
  SimplicialComplex k;
  k.vertex_count_ = vertex_count;
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    require(f.size() <= 24, "facet too large for explicit closure");
  }
  facets.erase(std::remove_if(facets.begin(), facets.end(), [](const Simplex& f) { return f.empty(); }),
               facets.end());
  // Larger facets first so that containment only needs to look backwards.
  std::sort(facets.begin(), facets.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  std::vector<Simplex> maximal;
  for (auto& f : facets) {
    bool contained = std::any_of(maximal.begin(), maximal.end(), [&](const Simplex& g) {
      return g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end());
    });
    if (!contained) maximal.push_back(std::move(f));
  }
  std::sort(maximal.begin(), maximal.end());
  k.facets_ = std::move(maximal);

  std::size_t top = 0;
  for (const auto& f : k.facets_) top = std::max(top, f.size());
  k.faces_.assign(top, {});
  for (const auto& f : k.facets_) {
    const std::uint32_t n = static_cast<std::uint32_t>(f.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex s;
      for (std::uint32_t i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(f[i]);
      k.faces_[s.size() - 1].push_back(std::move(s));
    }
  }
  for (auto& level : k.faces_) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  return k;
}

inline const std::vector<Simplex>& SimplicialComplex::faces(int k) const {
  static const std::vector<Simplex> none;
  if (k < 0 || k >= static_cast<int>(faces_.size())) return none;
  return faces_[k];
}

inline std::size_t SimplicialComplex::face_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : faces_) n += level.size();
  return n;
}

inline std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& level : faces_) f.push_back(level.size());
  return f;
}

inline long long SimplicialComplex::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t k = 0; k < faces_.size(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(faces_[k].size());
  return chi;
}

inline long SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > faces_.size()) return -1;
  const auto& level = faces_[s.size() - 1];
  auto it = std::lower_bound(level.begin(), level.end(), s);
  if (it == level.end() || *it != s) return -1;
  return static_cast<long>(it - level.begin());
}

inline bool SimplicialComplex::contains(const Simplex& s) const { return index_of(s) >= 0; }

inline std::vector<std::uint32_t> SimplicialComplex::used_vertices() const {
  std::vector<std::uint32_t> out;
  for (const auto& s : faces(0)) out.push_back(s[0]);
  return out;
}

inline bool SimplicialComplex::is_pure() const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const Simplex& f) { return static_cast<int>(f.size()) == dim() + 1; });
}

inline LabelledComplex link_of_vertex(const SimplicialComplex& k, std::uint32_t v) {
  require(k.contains(Simplex{v}), "vertex " + std::to_string(v) + " is not in the complex");
  std::vector<Simplex> raw;
  for (const auto& f : k.facets()) {
    if (!std::binary_search(f.begin(), f.end(), v)) continue;
    Simplex s;
    for (auto u : f)
      if (u != v) s.push_back(u);
    raw.push_back(std::move(s));
  }
  std::vector<std::uint32_t> labels;
  for (const auto& s : raw) labels.insert(labels.end(), s.begin(), s.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (auto& s : raw)
    for (auto& u : s)
      u = static_cast<std::uint32_t>(std::lower_bound(labels.begin(), labels.end(), u) - labels.begin());
  return {SimplicialComplex::from_facets(static_cast<std::uint32_t>(labels.size()), std::move(raw)),
          std::move(labels)};
}

inline SimplicialComplex induced_subcomplex(const SimplicialComplex& k, const std::vector<std::uint32_t>& vertices) {
  std::vector<std::uint32_t> keep(vertices);
  std::sort(keep.begin(), keep.end());
  std::vector<Simplex> raw;
  for (const auto& f : k.facets()) {
    Simplex s;
    for (auto u : f)
      if (std::binary_search(keep.begin(), keep.end(), u)) s.push_back(u);
    if (!s.empty()) raw.push_back(std::move(s));
  }
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(raw));
}

}  // namespace cuspforge
