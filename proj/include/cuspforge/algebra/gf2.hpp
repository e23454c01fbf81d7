#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cuspforge/error.hpp"

namespace cuspforge {

/// Fixed-length vector over GF(2), packed 64 entries per word.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    if (v)
      words_[i >> 6] |= (1ULL << (i & 63));
    else
      words_[i >> 6] &= ~(1ULL << (i & 63));
  }
  void flip(std::size_t i) { words_[i >> 6] ^= (1ULL << (i & 63)); }

  BitVector& operator^=(const BitVector& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  /// XOR restricted to words from `first_word` on.
  void xor_from(const BitVector& o, std::size_t first_word) {
    for (std::size_t w = first_word; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  /// Lowest set index, or size() when zero.
  std::size_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return size_;
  }
  /// Lowest set index at or after `from`, or size().
  std::size_t next(std::size_t from) const {
    if (from >= size_) return size_;
    std::size_t w = from >> 6;
    std::uint64_t word = words_[w] & (~0ULL << (from & 63));
    while (true) {
      if (word) return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
      if (++w >= words_.size()) return size_;
      word = words_[w];
    }
  }
  bool dot(const BitVector& o) const {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
    return std::popcount(acc) & 1;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix with bit-packed rows.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
  explicit GF2Matrix(std::vector<BitVector> rows, std::size_t cols) : cols_(cols), rows_(std::move(rows)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }
  const std::vector<BitVector>& row_vectors() const noexcept { return rows_; }

  GF2Matrix transpose() const {
    GF2Matrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (std::size_t c = rows_[r].lowest(); c < cols_; c = rows_[r].next(c + 1)) t.set(c, r);
    return t;
  }

  BitVector apply(const BitVector& x) const {
    BitVector y(rows());
    for (std::size_t r = 0; r < rows(); ++r)
      if (rows_[r].dot(x)) y.set(r);
    return y;
  }

  friend GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b) {
    require(a.cols() == b.rows(), "GF(2) matrix shape mismatch");
    GF2Matrix c(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t k = a.rows_[r].lowest(); k < a.cols(); k = a.rows_[r].next(k + 1)) c.rows_[r] ^= b.rows_[k];
    return c;
  }

  static GF2Matrix identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Reduced row echelon form; pivots chosen by lowest column index.
struct GF2Echelon {
  GF2Matrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

inline GF2Echelon rref(GF2Matrix m, bool full_reduction = true) {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t p = rank;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    std::swap(m.row(p), m.row(rank));
    const std::size_t w = c >> 6;
    for (std::size_t r = full_reduction ? 0 : rank + 1; r < m.rows(); ++r)
      if (r != rank && m.get(r, c)) m.row(r).xor_from(m.row(rank), w);
    pivots.push_back(c);
    ++rank;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const GF2Matrix& m) {
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) return rref(m.transpose(), false).rank();
  return rref(m, false).rank();
}

/// Basis of { x : A x = 0 }.
inline std::vector<BitVector> nullspace(const GF2Matrix& a) {
  auto e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<BitVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVector x(a.cols());
    x.set(free);
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i)
      if (e.reduced.get(i, free)) x.set(e.pivot_columns[i]);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// One solution of A x = b, if any.
inline std::optional<BitVector> solve(const GF2Matrix& a, const BitVector& b) {
  GF2Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = a.row(r).lowest(); c < a.cols(); c = a.row(r).next(c + 1)) aug.set(r, c);
    if (b.get(r)) aug.set(r, a.cols());
  }
  auto e = rref(std::move(aug));
  BitVector x(a.cols());
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
    if (e.pivot_columns[i] == a.cols()) return std::nullopt;
    if (e.reduced.get(i, a.cols())) x.set(e.pivot_columns[i]);
  }
  return x;
}

/// Incrementally built span with pivot = lowest set bit, used to reduce
/// vectors modulo a subspace.
class GF2Span {
 public:
  explicit GF2Span(std::size_t dim) : pivot_of_(dim, npos) {}

  /// Reduces v in place; returns true when v ends up nonzero.
  bool reduce(BitVector& v) const {
    for (std::size_t i = v.lowest(); i < v.size(); i = v.next(i + 1)) {
      if (pivot_of_[i] == npos) continue;
      v.xor_from(basis_[pivot_of_[i]], i >> 6);
    }
    return v.any();
  }
  /// Inserts v unless it already lies in the span; returns whether it grew.
  bool insert(BitVector v) {
    if (!reduce(v)) return false;
    pivot_of_[v.lowest()] = basis_.size();
    basis_.push_back(std::move(v));
    return true;
  }
  std::size_t dim() const noexcept { return basis_.size(); }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_of_;
  std::vector<BitVector> basis_;
};

}  // namespace cuspforge
