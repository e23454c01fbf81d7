#pragma once

#include <optional>
#include <vector>

#include "cuspforge/algebra/chain_complex.hpp"
#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/algebra/int_matrix.hpp"

namespace cuspforge {

struct HomologyReport {
  Coefficients coeff = Coefficients::integers;
  std::vector<std::size_t> betti;
  /// Torsion coefficients per degree (integral only).
  std::vector<std::vector<BigInt>> torsion;

  friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

namespace detail {

inline std::size_t rank_mod2(const ChainComplexData& c, int k) {
  if (k < 1 || k > c.dim()) return 0;
  // The shorter side becomes the row count.
  if (c.rank(k - 1) <= c.rank(k)) return rref(c.d_mod2(k), false).rank();
  return rref(c.d_mod2_transposed(k), false).rank();
}

}  // namespace detail

inline HomologyReport homology(const ChainComplexData& c) {
  HomologyReport h;
  h.coeff = c.coeff;
  const int top = c.dim();
  if (c.coeff == Coefficients::mod2) {
    std::vector<std::size_t> r(top + 2, 0);
    for (int k = 1; k <= top; ++k) r[k] = detail::rank_mod2(c, k);
    for (int k = 0; k <= top; ++k) h.betti.push_back(c.rank(k) - r[k] - r[k + 1]);
    h.torsion.assign(top + 1, {});
    return h;
  }
  std::vector<std::vector<BigInt>> factors(top + 2);
  for (int k = 1; k <= top; ++k) factors[k] = invariant_factors(c.boundary[k]);
  for (int k = 0; k <= top; ++k) {
    h.betti.push_back(c.rank(k) - factors[k].size() - factors[k + 1].size());
    std::vector<BigInt> t;
    for (const auto& f : factors[k + 1])
      if (f > 1) t.push_back(f);
    h.torsion.push_back(std::move(t));
  }
  return h;
}

/// Cocycles in C^k whose classes form a basis of H^k(-; Z/2).
inline std::vector<BitVector> cohomology_basis_mod2(const ChainComplexData& c, int k) {
  const std::size_t n = c.rank(k);
  if (n == 0) return {};
  // ker delta^k = ker (d_{k+1})^T; im delta^{k-1} = row space of d_k.
  auto cocycles = nullspace(c.d_mod2_transposed(k + 1));
  GF2Span span(n);
  auto image = c.d_mod2(k);
  for (std::size_t r = 0; r < image.rows(); ++r) span.insert(image.row(r));
  std::vector<BitVector> basis;
  for (auto& z : cocycles)
    if (span.insert(z)) basis.push_back(std::move(z));
  return basis;
}

/// Cycles in C_k whose classes form a basis of H_k(-; Z/2).
inline std::vector<BitVector> homology_basis_mod2(const ChainComplexData& c, int k) {
  const std::size_t n = c.rank(k);
  if (n == 0) return {};
  auto cycles = nullspace(c.d_mod2(k));
  GF2Span span(n);
  auto image = c.d_mod2_transposed(k + 1);
  for (std::size_t r = 0; r < image.rows(); ++r) span.insert(image.row(r));
  std::vector<BitVector> basis;
  for (auto& z : cycles)
    if (span.insert(z)) basis.push_back(std::move(z));
  return basis;
}

/// Integral H_k modulo torsion: cycle representatives of a free basis, and
/// a functional matrix `coordinates` (rank x n_k) that sends any k-cycle to
/// its coordinates in that basis.
struct FreeHomology {
  std::vector<std::vector<BigInt>> generators;
  IntMatrix coordinates;
  std::vector<BigInt> torsion;
  std::size_t rank() const noexcept { return generators.size(); }
};

inline FreeHomology free_homology(const ChainComplexData& c, int k) {
  require(c.coeff == Coefficients::integers, "free homology needs integral chains");
  const std::size_t n = c.rank(k);
  FreeHomology out;
  if (n == 0) {
    out.coordinates = IntMatrix(0, 0);
    return out;
  }
  // Kernel of d_k: columns r.. of `right` from the SNF of d_k.
  IntMatrix zb, zcoord;  // n x z basis, z x n coordinates
  if (k >= 1) {
    auto s = smith_normal_form(c.boundary[k].to_dense());
    const std::size_t r = s.rank();
    zb = IntMatrix(n, n - r);
    zcoord = IntMatrix(n - r, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = r; j < n; ++j) {
        zb(i, j - r) = s.right(i, j);
        zcoord(j - r, i) = s.V(j, i);
      }
  } else {
    zb = IntMatrix::identity(n);
    zcoord = IntMatrix::identity(n);
  }
  const std::size_t z = zb.cols();
  // Boundaries in kernel coordinates.
  IntMatrix b = k + 1 <= c.dim() ? zcoord * c.boundary[k + 1].to_dense() : IntMatrix(z, 0);
  auto sb = smith_normal_form(b);
  const std::size_t rb = b.cols() == 0 ? 0 : sb.rank();
  for (const auto& f : sb.invariant_factors())
    if (f > 1) out.torsion.push_back(f);
  IntMatrix lift = zb * sb.U;          // columns: cycles
  IntMatrix coords = sb.left * zcoord;  // rows: functionals
  out.coordinates = IntMatrix(z - rb, n);
  for (std::size_t j = rb; j < z; ++j) {
    std::vector<BigInt> g(n);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] = lift(i, j);
      out.coordinates(j - rb, i) = coords(j, i);
    }
    out.generators.push_back(std::move(g));
  }
  return out;
}

/// Chain-level inclusion of a subcomplex: for each degree, the index in X of
/// every cell of A.
struct CellInclusion {
  std::vector<std::vector<std::uint32_t>> index;
};

inline CellInclusion cell_inclusion(const SimplicialComplex& x, const SimplicialComplex& a) {
  CellInclusion inc;
  for (int d = 0; d <= a.dim(); ++d) {
    std::vector<std::uint32_t> idx;
    for (const auto& s : a.faces(d)) {
      long i = x.index_of(s);
      require(i >= 0, "not a subcomplex: simplex missing from the ambient complex");
      idx.push_back(static_cast<std::uint32_t>(i));
    }
    inc.index.push_back(std::move(idx));
  }
  return inc;
}

inline CellInclusion cell_inclusion(const CubicalComplex& x, const CubicalComplex& a) {
  require(x.ambient_rank() == a.ambient_rank() && x.quotient_generators() == a.quotient_generators(),
          "not a subcomplex: ambient cubes differ");
  CellInclusion inc;
  for (int d = 0; d <= a.dim(); ++d) {
    std::vector<std::uint32_t> idx;
    auto [b, e] = a.dim_range(d);
    const std::size_t off = x.dim_range(d).first;
    for (std::size_t i = b; i < e; ++i) {
      long j = x.find(a.cells()[i]);
      require(j >= 0, "not a subcomplex: cell missing from the ambient complex");
      idx.push_back(static_cast<std::uint32_t>(static_cast<std::size_t>(j) - off));
    }
    inc.index.push_back(std::move(idx));
  }
  return inc;
}

/// Matrices of the maps induced by A ⊆ X in degree k over Z/2, in the bases
/// returned by cohomology_basis_mod2 / homology_basis_mod2 of each side.
struct InducedMap {
  /// H^k(X) -> H^k(A): b_k(A) x b_k(X).
  GF2Matrix restriction;
  /// H_k(A) -> H_k(X): b_k(X) x b_k(A).
  GF2Matrix inclusion;
};

namespace detail {

inline BitVector restrict_cochain(const BitVector& alpha, const std::vector<std::uint32_t>& idx) {
  BitVector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (alpha.get(idx[i])) out.set(i);
  return out;
}

inline BitVector push_chain(const BitVector& z, const std::vector<std::uint32_t>& idx, std::size_t n) {
  BitVector out(n);
  for (std::size_t i = z.lowest(); i < z.size(); i = z.next(i + 1)) out.flip(idx[i]);
  return out;
}

// Coordinates of a class with pairings w[l] = <class, z_l> against a basis
// dual-paired by `pairing` (rows l, cols j: <basis_j, z_l>).
inline BitVector coordinates_from_pairing(const GF2Matrix& pairing, const BitVector& w) {
  auto x = solve(pairing, w);
  if (!x) throw ValidationError("homology and cohomology bases do not pair perfectly");
  return *x;
}

}  // namespace detail

inline InducedMap induced_map_mod2(const ChainComplexData& x, const ChainComplexData& a, const CellInclusion& inc,
                                   int k) {
  require(x.coeff == Coefficients::mod2 && a.coeff == Coefficients::mod2, "induced maps are computed over Z/2");
  const auto alpha = cohomology_basis_mod2(x, k);
  const auto zx = homology_basis_mod2(x, k);
  const auto beta = cohomology_basis_mod2(a, k);
  const auto za = homology_basis_mod2(a, k);
  static const std::vector<std::uint32_t> none;
  const auto& idx = k >= 0 && k < static_cast<int>(inc.index.size()) ? inc.index[k] : none;
  InducedMap out{GF2Matrix(beta.size(), alpha.size()), GF2Matrix(alpha.size(), beta.size())};

  GF2Matrix pa(za.size(), beta.size());
  for (std::size_t l = 0; l < za.size(); ++l)
    for (std::size_t j = 0; j < beta.size(); ++j) pa.set(l, j, beta[j].dot(za[l]));
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    auto r = detail::restrict_cochain(alpha[i], idx);
    BitVector w(za.size());
    for (std::size_t l = 0; l < za.size(); ++l) w.set(l, r.dot(za[l]));
    auto coords = detail::coordinates_from_pairing(pa, w);
    for (std::size_t j = 0; j < beta.size(); ++j) out.restriction.set(j, i, coords.get(j));
  }

  GF2Matrix px(alpha.size(), zx.size());
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t l = 0; l < zx.size(); ++l) px.set(i, l, alpha[i].dot(zx[l]));
  for (std::size_t j = 0; j < za.size(); ++j) {
    auto pushed = detail::push_chain(za[j], idx, x.rank(k));
    BitVector w(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) w.set(i, alpha[i].dot(pushed));
    auto coords = detail::coordinates_from_pairing(px, w);
    for (std::size_t l = 0; l < zx.size(); ++l) out.inclusion.set(l, j, coords.get(l));
  }
  return out;
}

template <class Complex>
InducedMap induced_map_mod2(const Complex& x, const Complex& a, int k) {
  return induced_map_mod2(chain_complex_of(x, Coefficients::mod2), chain_complex_of(a, Coefficients::mod2),
                          cell_inclusion(x, a), k);
}

}  // namespace cuspforge
