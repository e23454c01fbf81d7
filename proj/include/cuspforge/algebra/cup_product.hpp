#pragma once

#include <cstdint>
#include <vector>

#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/error.hpp"

namespace cuspforge {

/// Mod 2 cochains on a cube complex are bit vectors indexed by the cells of one
/// dimension, in the complex's order.

namespace detail {

inline std::size_t local_index(const CubicalComplex& z, const CubeCell& c) {
  long i = z.find(c);
  require(i >= 0, "face missing from cube complex");
  return static_cast<std::size_t>(i) - z.dim_range(c.dim()).first;
}

// Calls visit(front, back) for every splitting of the support of `c` into a
// k-element part A (front face: the rest set to -1) and its complement B
// (back face: A set to +1).
template <class Visit>
void for_each_splitting(const CubicalComplex& z, const CubeCell& c, int k, Visit&& visit) {
  const auto idx = support_indices(c.support);
  const unsigned n = static_cast<unsigned>(idx.size());
  for (std::uint64_t pick = 0; pick < (1ULL << n); ++pick) {
    if (std::popcount(pick) != k) continue;
    std::uint64_t a = 0;
    for (unsigned t = 0; t < n; ++t)
      if (pick >> t & 1) a |= 1ULL << idx[t];
    const std::uint64_t b = c.support & ~a;
    CubeCell front{a, c.signs};
    CubeCell back{b, c.signs | a};
    visit(local_index(z, front), local_index(z, back));
  }
}

}  // namespace detail

/// Cup product of a k-cochain and an l-cochain over Z/2 via the front/back
/// face diagonal. Only defined on complexes embedded in [-1,1]^m, where the
/// cube coordinates are global.
inline BitVector cup_product(const CubicalComplex& z, const BitVector& a, int k, const BitVector& b, int l) {
  require(z.is_embedded(), "cup product needs an embedded cube complex");
  require(a.size() == z.count(k) && b.size() == z.count(l), "cochain length does not match the complex");
  BitVector out(z.count(k + l));
  auto [begin, end] = z.dim_range(k + l);
  for (std::size_t i = begin; i < end; ++i) {
    bool v = false;
    detail::for_each_splitting(z, z.cells()[i], k, [&](std::size_t f, std::size_t g) { v ^= a.get(f) && b.get(g); });
    if (v) out.set(i - begin);
  }
  return out;
}

/// Coboundary of a k-cochain over Z/2.
inline BitVector coboundary(const CubicalComplex& z, const BitVector& a, int k) {
  require(a.size() == z.count(k), "cochain length does not match the complex");
  BitVector out(z.count(k + 1));
  auto [begin, end] = z.dim_range(k + 1);
  for (std::size_t i = begin; i < end; ++i) {
    bool v = false;
    for (unsigned j = 0; j < static_cast<unsigned>(k + 1); ++j)
      for (bool plus : {false, true}) v ^= a.get(detail::local_index(z, z.face(z.cells()[i], j, plus).first));
    if (v) out.set(i - begin);
  }
  return out;
}

/// <c, [Z]> with the mod 2 fundamental class taken as the sum of all top cells.
inline bool evaluate_on_fundamental_class(const CubicalComplex& z, const BitVector& c) {
  require(c.size() == z.count(z.dim()), "cochain is not top-dimensional");
  return c.popcount() % 2 == 1;
}

/// Matrix of <a_i ⌣ b_j, [Z]> for k-cochains a_i and l-cochains b_j with
/// k + l = dim Z.
inline GF2Matrix cup_pairing(const CubicalComplex& z, const std::vector<BitVector>& a, int k,
                             const std::vector<BitVector>& b, int l) {
  require(z.is_embedded(), "cup product needs an embedded cube complex");
  require(k + l == z.dim(), "degrees must add up to the dimension");
  // Per cell, which cochains are nonzero there.
  auto columns = [&](const std::vector<BitVector>& cochains, int deg) {
    std::vector<BitVector> col(z.count(deg), BitVector(cochains.size()));
    for (std::size_t i = 0; i < cochains.size(); ++i) {
      require(cochains[i].size() == z.count(deg), "cochain length does not match the complex");
      for (std::size_t c = cochains[i].lowest(); c < cochains[i].size(); c = cochains[i].next(c + 1)) col[c].set(i);
    }
    return col;
  };
  const auto ca = columns(a, k);
  const auto cb = columns(b, l);
  GF2Matrix q(a.size(), b.size());
  auto [begin, end] = z.dim_range(z.dim());
  for (std::size_t i = begin; i < end; ++i)
    detail::for_each_splitting(z, z.cells()[i], k, [&](std::size_t f, std::size_t g) {
      const auto& rows = ca[f];
      if (!rows.any() || !cb[g].any()) return;
      for (std::size_t r = rows.lowest(); r < rows.size(); r = rows.next(r + 1)) q.row(r) ^= cb[g];
    });
  return q;
}

}  // namespace cuspforge
