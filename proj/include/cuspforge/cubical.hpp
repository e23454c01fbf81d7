#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cuspforge/error.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

/// A cell of [-1,1]^m: coordinates in `support` range over [-1,1], every
/// other coordinate i is fixed to +1 (bit i of `signs` set) or -1 (clear).
/// Sign bits inside the support are always zero.
struct CubeCell {
  std::uint64_t support = 0;
  std::uint64_t signs = 0;

  int dim() const noexcept { return std::popcount(support); }

  friend bool operator==(const CubeCell&, const CubeCell&) = default;
  friend bool operator<(const CubeCell& a, const CubeCell& b) {
    return std::make_tuple(a.dim(), a.support, a.signs) < std::make_tuple(b.dim(), b.support, b.signs);
  }
};

inline std::uint64_t low_mask(unsigned m) { return m >= 64 ? ~0ULL : ((1ULL << m) - 1); }

/// Coordinates of the support in increasing order.
inline std::vector<unsigned> support_indices(std::uint64_t support) {
  std::vector<unsigned> out;
  while (support) {
    out.push_back(static_cast<unsigned>(std::countr_zero(support)));
    support &= support - 1;
  }
  return out;
}

namespace detail {
inline std::size_t& budget_override() {
  static std::size_t value = 0;
  return value;
}
}  // namespace detail

/// Cap on explicitly enumerated cells: a set_cell_budget value, else
/// CUSPFORGE_BUDGET, else 2^22.
inline std::size_t cell_budget() {
  if (detail::budget_override() > 0) return detail::budget_override();
  if (const char* env = std::getenv("CUSPFORGE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 22;
}

/// 0 restores the environment/default cap.
inline void set_cell_budget(std::size_t cells) { detail::budget_override() = cells; }

/// Cube complex inside [-1,1]^m, optionally divided by a group H of sign flips
/// (given by generator bitmasks) acting freely on cells. With H trivial this is
/// an honest subcomplex of the cube and carries its cubical-set structure
/// (front face = coordinate -1). Cells are stored as canonical H-orbit
/// representatives, sorted by (dim, support, signs).
class CubicalComplex {
 public:
  CubicalComplex() = default;

  /// Canonicalizes, deduplicates and checks closure under all face maps.
  static CubicalComplex from_cells(unsigned ambient_rank, std::vector<CubeCell> cells,
                                   std::vector<std::uint64_t> quotient = {});

  unsigned ambient_rank() const noexcept { return ambient_rank_; }
  const std::vector<std::uint64_t>& quotient_generators() const noexcept { return quotient_; }
  bool is_embedded() const noexcept { return quotient_.empty(); }

  const std::vector<CubeCell>& cells() const noexcept { return cells_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }
  int dim() const noexcept { return static_cast<int>(offsets_.size()) - 2; }
  std::pair<std::size_t, std::size_t> dim_range(int k) const;
  std::size_t count(int k) const;
  std::size_t vertex_count() const { return count(0); }
  std::vector<std::size_t> f_vector() const;
  long long euler_characteristic() const;

  /// Index of the cell (after canonicalization), or -1.
  long find(CubeCell c) const;
  bool contains(CubeCell c) const { return find(c) >= 0; }

  /// Canonical orbit representative; `flip` receives the group element used.
  CubeCell canonical(CubeCell c, std::uint64_t* flip = nullptr) const;

  /// Face obtained by fixing the `position`-th support coordinate (0-based,
  /// increasing order) to +1 (`plus`) or -1. Returned canonicalized, together
  /// with the orientation factor (+1/-1) relating the lifted face to its
  /// representative.
  std::pair<CubeCell, int> face(CubeCell c, unsigned position, bool plus) const;

 private:
  unsigned ambient_rank_ = 0;
  std::vector<std::uint64_t> quotient_;
  std::vector<CubeCell> cells_;
  std::vector<std::size_t> offsets_;
};

/// Simplicial complex on the m coordinates whose faces are the supports of
/// cells containing vertex `v` (given by its sign vector).
SimplicialComplex link_of_vertex(const CubicalComplex& z, std::uint64_t vertex_signs);

// ---------------------------------------------------------------------------

namespace detail {

// Echelon basis of a set of generators projected to `mask`, carrying the full
// vectors. Throws if some nonzero group element projects to zero, which means
// the element fixes a cell with support outside `mask`.
struct ProjectedBasis {
  std::vector<std::uint64_t> projected;
  std::vector<std::uint64_t> full;
};

inline ProjectedBasis project_basis(const std::vector<std::uint64_t>& gens, std::uint64_t mask) {
  ProjectedBasis b;
  for (auto g : gens) {
    std::uint64_t p = g & mask, f = g;
    for (std::size_t i = 0; i < b.projected.size(); ++i) {
      std::uint64_t lead = std::bit_floor(b.projected[i]);
      if (p & lead) {
        p ^= b.projected[i];
        f ^= b.full[i];
      }
    }
    if (p == 0) {
      if (f != 0) throw ValidationError("sign-flip group does not act freely on cells");
      continue;
    }
    // Keep leading bits distinct and reduced.
    std::uint64_t lead = std::bit_floor(p);
    for (std::size_t i = 0; i < b.projected.size(); ++i)
      if (b.projected[i] & lead) {
        b.projected[i] ^= p;
        b.full[i] ^= f;
      }
    b.projected.push_back(p);
    b.full.push_back(f);
  }
  std::vector<std::size_t> order(b.projected.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return b.projected[x] > b.projected[y]; });
  ProjectedBasis sorted;
  for (auto i : order) {
    sorted.projected.push_back(b.projected[i]);
    sorted.full.push_back(b.full[i]);
  }
  return sorted;
}

}  // namespace detail

inline CubeCell CubicalComplex::canonical(CubeCell c, std::uint64_t* flip) const {
  c.signs &= ~c.support & low_mask(ambient_rank_);
  std::uint64_t h = 0;
  if (!quotient_.empty()) {
    auto basis = detail::project_basis(quotient_, ~c.support & low_mask(ambient_rank_));
    for (std::size_t i = 0; i < basis.projected.size(); ++i) {
      if (c.signs & std::bit_floor(basis.projected[i])) {
        c.signs ^= basis.projected[i];
        h ^= basis.full[i];
      }
    }
  }
  if (flip) *flip = h;
  return c;
}

inline CubicalComplex CubicalComplex::from_cells(unsigned ambient_rank, std::vector<CubeCell> cells,
                                                 std::vector<std::uint64_t> quotient) {
  require(ambient_rank <= 64, "ambient rank above 64 is not supported");
  CubicalComplex z;
  z.ambient_rank_ = ambient_rank;
  for (auto& g : quotient) g &= low_mask(ambient_rank);
  quotient.erase(std::remove(quotient.begin(), quotient.end(), 0ULL), quotient.end());
  z.quotient_ = std::move(quotient);
  for (auto& c : cells) {
    require((c.support & ~low_mask(ambient_rank)) == 0, "cell support outside ambient rank");
    c = z.canonical(c);
  }
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  z.cells_ = std::move(cells);
  int top = z.cells_.empty() ? -1 : z.cells_.back().dim();
  z.offsets_.assign(top + 2, 0);
  for (const auto& c : z.cells_) ++z.offsets_[c.dim() + 1];
  for (int k = 0; k <= top; ++k) z.offsets_[k + 1] += z.offsets_[k];
  for (const auto& c : z.cells_) {
    for (unsigned j = 0; j < static_cast<unsigned>(c.dim()); ++j)
      for (bool plus : {false, true})
        require(z.contains(z.face(c, j, plus).first), "cube complex is not closed under faces");
  }
  return z;
}

inline std::pair<std::size_t, std::size_t> CubicalComplex::dim_range(int k) const {
  if (k < 0 || k > dim()) return {0, 0};
  return {offsets_[k], offsets_[k + 1]};
}

inline std::size_t CubicalComplex::count(int k) const {
  auto [b, e] = dim_range(k);
  return e - b;
}

inline std::vector<std::size_t> CubicalComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int k = 0; k <= dim(); ++k) f.push_back(count(k));
  return f;
}

inline long long CubicalComplex::euler_characteristic() const {
  long long chi = 0;
  for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
  return chi;
}

inline long CubicalComplex::find(CubeCell c) const {
  c = canonical(c);
  auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || !(*it == c)) return -1;
  return static_cast<long>(it - cells_.begin());
}

inline std::pair<CubeCell, int> CubicalComplex::face(CubeCell c, unsigned position, bool plus) const {
  std::uint64_t s = c.support;
  for (unsigned i = 0; i < position; ++i) s &= s - 1;
  require(s != 0, "face position out of range");
  std::uint64_t bit = s & (~s + 1);
  CubeCell f{c.support & ~bit, (c.signs & ~c.support) | (plus ? bit : 0)};
  std::uint64_t h = 0;
  f = canonical(f, &h);
  int orientation = (std::popcount(h & f.support) % 2 == 0) ? 1 : -1;
  return {f, orientation};
}

inline SimplicialComplex link_of_vertex(const CubicalComplex& z, std::uint64_t vertex_signs) {
  const std::uint64_t all = low_mask(z.ambient_rank());
  require(z.contains(CubeCell{0, vertex_signs & all}), "vertex is not in the cube complex");
  std::vector<Simplex> faces;
  for (const auto& c : z.cells()) {
    if (c.support == 0) continue;
    // Is some lift of c incident to the vertex?
    if (!z.contains(CubeCell{c.support, vertex_signs & ~c.support & all})) continue;
    if (z.canonical(CubeCell{c.support, vertex_signs & ~c.support & all}) != c) continue;
    Simplex s;
    for (auto i : support_indices(c.support)) s.push_back(i);
    faces.push_back(std::move(s));
  }
  return SimplicialComplex::from_facets(z.ambient_rank(), std::move(faces));
}

}  // namespace cuspforge
