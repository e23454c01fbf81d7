#pragma once

#include <map>
#include <string>
#include <vector>

#include "cuspforge/algebra/gf2.hpp"
#include "cuspforge/algebra/int_matrix.hpp"
#include "cuspforge/cubical.hpp"
#include "cuspforge/error.hpp"
#include "cuspforge/simplicial.hpp"

namespace cuspforge {

enum class Coefficients { integers, mod2 };

inline std::string to_string(Coefficients c) { return c == Coefficients::integers ? "z" : "z2"; }

/// Cellular chain complex. boundary[k] maps C_k to C_{k-1} (rows are
/// (k-1)-cells, columns k-cells); boundary[0] has no rows. Over Z/2 the
/// stored entries are 1.
struct ChainComplexData {
  Coefficients coeff = Coefficients::integers;
  std::vector<std::size_t> ranks;
  std::vector<SparseIntMatrix> boundary;

  int dim() const noexcept { return static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int k) const { return k < 0 || k > dim() ? 0 : ranks[k]; }

  /// Boundary C_k -> C_{k-1}; an empty matrix of the right shape outside 0..dim.
  SparseIntMatrix d(int k) const {
    if (k >= 0 && k <= dim()) return boundary[k];
    return SparseIntMatrix(rank(k - 1), rank(k));
  }

  /// d(k) reduced mod 2, rows = (k-1)-cells.
  GF2Matrix d_mod2(int k) const {
    GF2Matrix m(rank(k - 1), rank(k));
    if (k < 1 || k > dim()) return m;
    for (std::size_t c = 0; c < boundary[k].cols; ++c)
      for (auto [r, v] : boundary[k].columns[c])
        if (v % 2 != 0) m.flip(r, c);
    return m;
  }
  /// Transpose of d_mod2(k), built directly: rows are k-cells.
  GF2Matrix d_mod2_transposed(int k) const {
    GF2Matrix m(rank(k), rank(k - 1));
    if (k < 1 || k > dim()) return m;
    for (std::size_t c = 0; c < boundary[k].cols; ++c)
      for (auto [r, v] : boundary[k].columns[c])
        if (v % 2 != 0) m.flip(c, r);
    return m;
  }
};

namespace detail {

inline void finish_column(std::vector<std::pair<std::uint32_t, std::int64_t>>& col, Coefficients coeff) {
  std::map<std::uint32_t, std::int64_t> acc;
  for (auto [r, v] : col) acc[r] += v;
  col.clear();
  for (auto [r, v] : acc) {
    std::int64_t x = coeff == Coefficients::mod2 ? (v & 1) : v;
    if (x != 0) col.emplace_back(r, x);
  }
}

// Throws unless d(k) * d(k+1) vanishes (mod 2 for Z/2 data).
inline void assert_boundary_squared_zero(const ChainComplexData& c) {
  for (int k = 1; k < c.dim(); ++k) {
    const auto& lower = c.boundary[k];
    const auto& upper = c.boundary[k + 1];
    for (std::size_t j = 0; j < upper.cols; ++j) {
      std::map<std::uint32_t, std::int64_t> acc;
      for (auto [mid, v] : upper.columns[j])
        for (auto [r, w] : lower.columns[mid]) acc[r] += v * w;
      for (auto [r, v] : acc) {
        bool zero = c.coeff == Coefficients::mod2 ? (v % 2 == 0) : (v == 0);
        if (!zero) throw ValidationError("boundary of a boundary is nonzero in degree " + std::to_string(k + 1));
      }
    }
  }
}

}  // namespace detail

/// Simplicial chains with the usual alternating signs.
inline ChainComplexData chain_complex_of(const SimplicialComplex& k, Coefficients coeff) {
  ChainComplexData c;
  c.coeff = coeff;
  for (int d = 0; d <= k.dim(); ++d) c.ranks.push_back(k.faces(d).size());
  for (int d = 0; d <= k.dim(); ++d) {
    SparseIntMatrix m(d == 0 ? 0 : c.ranks[d - 1], c.ranks[d]);
    if (d > 0) {
      const auto& cells = k.faces(d);
      for (std::size_t j = 0; j < cells.size(); ++j) {
        auto& col = m.columns[j];
        for (std::size_t i = 0; i < cells[j].size(); ++i) {
          Simplex f;
          for (std::size_t t = 0; t < cells[j].size(); ++t)
            if (t != i) f.push_back(cells[j][t]);
          col.emplace_back(static_cast<std::uint32_t>(k.index_of(f)), i % 2 == 0 ? 1 : -1);
        }
        detail::finish_column(col, coeff);
      }
    }
    c.boundary.push_back(std::move(m));
  }
  detail::assert_boundary_squared_zero(c);
  return c;
}

/// Cubical chains: d = sum_j (-1)^j (d_j^+ - d_j^-), j running over the
/// support in increasing order; quotient cells carry the orientation factor
/// of their representative.
inline ChainComplexData chain_complex_of(const CubicalComplex& z, Coefficients coeff) {
  ChainComplexData c;
  c.coeff = coeff;
  for (int d = 0; d <= z.dim(); ++d) c.ranks.push_back(z.count(d));
  for (int d = 0; d <= z.dim(); ++d) {
    SparseIntMatrix m(d == 0 ? 0 : c.ranks[d - 1], c.ranks[d]);
    if (d > 0) {
      auto [b, e] = z.dim_range(d);
      const std::size_t lower = z.dim_range(d - 1).first;
      for (std::size_t i = b; i < e; ++i) {
        auto& col = m.columns[i - b];
        for (unsigned j = 0; j < static_cast<unsigned>(d); ++j) {
          const std::int64_t sign = j % 2 == 0 ? 1 : -1;
          for (bool plus : {false, true}) {
            auto [f, orient] = z.face(z.cells()[i], j, plus);
            auto idx = static_cast<std::uint32_t>(static_cast<std::size_t>(z.find(f)) - lower);
            col.emplace_back(idx, sign * orient * (plus ? 1 : -1));
          }
        }
        detail::finish_column(col, coeff);
      }
    }
    c.boundary.push_back(std::move(m));
  }
  detail::assert_boundary_squared_zero(c);
  return c;
}

}  // namespace cuspforge
