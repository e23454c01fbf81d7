#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "cuspforge/error.hpp"

namespace cuspforge {

/// Sorted list of facet indices containing a face.
using FacetSet = std::vector<std::uint32_t>;

/// Face annotation. `ideal` marks an ideal vertex, or in a Gosset polytope the
/// cross-polytope facet dual to one; marks survive polar duality unchanged.
/// `filling` marks the cube inserted by a Dehn filling.
enum class FaceMark : std::uint8_t { real, ideal, filling };

struct Face {
  int rank = 0;
  FacetSet facets;
  FaceMark mark = FaceMark::real;

  friend bool operator==(const Face&, const Face&) = default;
};

/// Boundary of an abstract rank-n polytope in facet-incidence encoding: every
/// proper nonempty face is recorded by the set of facets containing it.
/// Facet i is the rank n-1 face {i}. Faces are sorted by (rank, facets).
class FaceLattice {
 public:
  FaceLattice() = default;
  FaceLattice(int rank, std::uint32_t facet_count, std::vector<Face> faces);

  int rank() const noexcept { return rank_; }
  std::uint32_t facet_count() const noexcept { return facet_count_; }
  const std::vector<Face>& faces() const noexcept { return faces_; }

  /// Index range [begin, end) of faces of rank r.
  std::pair<std::size_t, std::size_t> rank_range(int r) const;
  std::size_t count(int r) const;
  /// f-vector (f_0, ..., f_{n-1}).
  std::vector<std::size_t> f_vector() const;
  long long euler_characteristic() const;

  /// Index of the face with exactly this facet set, or -1.
  long find(const FacetSet& facets) const;
  long find(int rank, const FacetSet& facets) const;

  /// Faces of rank 0 marked ideal.
  std::vector<std::size_t> ideal_vertices() const;

  friend bool operator==(const FaceLattice&, const FaceLattice&) = default;

 private:
  int rank_ = 0;
  std::uint32_t facet_count_ = 0;
  std::vector<Face> faces_;
  std::vector<std::size_t> offsets_;
};

inline FaceLattice::FaceLattice(int rank, std::uint32_t facet_count, std::vector<Face> faces)
    : rank_(rank), facet_count_(facet_count), faces_(std::move(faces)) {
  require(rank_ >= 1, "face lattice rank must be positive");
  for (auto& f : faces_) {
    require(f.rank >= 0 && f.rank < rank_, "face rank out of range");
    std::sort(f.facets.begin(), f.facets.end());
    f.facets.erase(std::unique(f.facets.begin(), f.facets.end()), f.facets.end());
    require(!f.facets.empty(), "face with empty facet set");
    require(f.facets.back() < facet_count_, "facet index out of range");
  }
  std::sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.facets < b.facets;
  });
  for (std::size_t i = 1; i < faces_.size(); ++i)
    require(!(faces_[i].facets == faces_[i - 1].facets), "duplicate face");
  offsets_.assign(rank_ + 1, 0);
  for (const auto& f : faces_) ++offsets_[f.rank + 1];
  for (int r = 0; r < rank_; ++r) offsets_[r + 1] += offsets_[r];
  require(count(rank_ - 1) == facet_count_, "facet count does not match rank n-1 faces");
  auto [b, e] = rank_range(rank_ - 1);
  for (std::size_t i = b; i < e; ++i)
    require(faces_[i].facets.size() == 1 && faces_[i].facets[0] == i - b, "facets must be the singletons {i}");
}

inline std::pair<std::size_t, std::size_t> FaceLattice::rank_range(int r) const {
  if (r < 0 || r >= rank_) return {0, 0};
  return {offsets_[r], offsets_[r + 1]};
}

inline std::size_t FaceLattice::count(int r) const {
  auto [b, e] = rank_range(r);
  return e - b;
}

inline std::vector<std::size_t> FaceLattice::f_vector() const {
  std::vector<std::size_t> f;
  for (int r = 0; r < rank_; ++r) f.push_back(count(r));
  return f;
}

inline long long FaceLattice::euler_characteristic() const {
  long long chi = 0;
  for (int r = 0; r < rank_; ++r) chi += (r % 2 == 0 ? 1 : -1) * static_cast<long long>(count(r));
  return chi;
}

inline long FaceLattice::find(int rank, const FacetSet& facets) const {
  auto [b, e] = rank_range(rank);
  auto first = faces_.begin() + static_cast<long>(b);
  auto last = faces_.begin() + static_cast<long>(e);
  auto it = std::lower_bound(first, last, facets, [](const Face& f, const FacetSet& s) { return f.facets < s; });
  if (it == last || it->facets != facets) return -1;
  return static_cast<long>(it - faces_.begin());
}

inline long FaceLattice::find(const FacetSet& facets) const {
  for (int r = 0; r < rank_; ++r)
    if (long i = find(r, facets); i >= 0) return i;
  return -1;
}

inline std::vector<std::size_t> FaceLattice::ideal_vertices() const {
  std::vector<std::size_t> out;
  auto [b, e] = rank_range(0);
  for (std::size_t i = b; i < e; ++i)
    if (faces_[i].mark == FaceMark::ideal) out.push_back(i);
  return out;
}

/// Each rank-r face lies in exactly n-r facets.
inline bool is_simple(const FaceLattice& p) {
  return std::all_of(p.faces().begin(), p.faces().end(), [&](const Face& f) {
    return static_cast<int>(f.facets.size()) == p.rank() - f.rank;
  });
}

/// The face poset (with the empty face and the polytope adjoined) is a lattice
/// iff facet sets are closed under intersection, the empty intersection
/// standing for the whole polytope. Quadratic in the number of faces.
inline bool is_lattice(const FaceLattice& p) {
  const auto& faces = p.faces();
  FacetSet meet;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      meet.clear();
      std::set_intersection(faces[i].facets.begin(), faces[i].facets.end(), faces[j].facets.begin(),
                            faces[j].facets.end(), std::back_inserter(meet));
      if (!meet.empty() && p.find(meet) < 0) return false;
    }
  }
  return true;
}

/// chi(boundary of an n-polytope) = 1 - (-1)^n.
inline bool satisfies_euler_relation(const FaceLattice& p) {
  return p.euler_characteristic() == (p.rank() % 2 == 0 ? 0 : 2);
}

/// For each face, the indices (within rank 0) of the vertices it contains.
inline std::vector<std::vector<std::uint32_t>> vertex_sets(const FaceLattice& p) {
  auto [vb, ve] = p.rank_range(0);
  std::vector<std::vector<std::uint32_t>> facet_vertices(p.facet_count());
  for (std::size_t v = vb; v < ve; ++v)
    for (auto j : p.faces()[v].facets) facet_vertices[j].push_back(static_cast<std::uint32_t>(v - vb));
  std::vector<std::vector<std::uint32_t>> out(p.faces().size());
  for (std::size_t i = 0; i < p.faces().size(); ++i) {
    const auto& x = p.faces()[i].facets;
    // Candidates are the vertices of the smallest facet containing the face.
    std::uint32_t best = x[0];
    for (auto j : x)
      if (facet_vertices[j].size() < facet_vertices[best].size()) best = j;
    for (auto v : facet_vertices[best]) {
      const auto& a = p.faces()[vb + v].facets;
      if (std::includes(a.begin(), a.end(), x.begin(), x.end())) out[i].push_back(v);
    }
  }
  return out;
}

/// Polar (dual) lattice: the face with vertex set V becomes a face of rank
/// n-1-r whose facet set is V. Marks are carried across.
inline FaceLattice polar(const FaceLattice& p) {
  auto vs = vertex_sets(p);
  std::vector<Face> faces;
  faces.reserve(p.faces().size());
  for (std::size_t i = 0; i < p.faces().size(); ++i)
    faces.push_back({p.rank() - 1 - p.faces()[i].rank, std::move(vs[i]), p.faces()[i].mark});
  return FaceLattice(p.rank(), static_cast<std::uint32_t>(p.count(0)), std::move(faces));
}

}  // namespace cuspforge
