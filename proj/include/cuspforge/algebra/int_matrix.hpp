#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cuspforge/error.hpp"

namespace cuspforge {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

template <class To, class From>
Matrix<To> convert(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = To(m(r, c));
  return out;
}

/// Determinant by fraction-free elimination (Bareiss).
inline BigInt determinant(IntMatrix m) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(k, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace detail {

// Checked arithmetic: int64 throws OverflowError, BigInt never overflows.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
  return r;
}
inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }
inline BigInt checked_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt checked_sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt checked_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt checked_neg(const BigInt& a) { return -a; }

template <class T>
T abs_value(const T& x) {
  if constexpr (std::is_same_v<T, BigInt>)
    return boost::multiprecision::abs(x);
  else
    return x < 0 ? checked_neg(x) : x;
}

// Row/column operations applied to D, mirrored on the transforms so that
// D = left * A * right and A = left_inv * D * right_inv throughout.
template <class T>
struct SnfState {
  Matrix<T> d, left, left_inv, right, right_inv;
  bool track;

  // row i -= q * row t
  void row_axpy(std::size_t i, std::size_t t, const T& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols(); ++c) d(i, c) = checked_sub(d(i, c), checked_mul(q, d(t, c)));
    if (!track) return;
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = checked_sub(left(i, c), checked_mul(q, left(t, c)));
    for (std::size_t r = 0; r < left_inv.rows(); ++r)
      left_inv(r, t) = checked_add(left_inv(r, t), checked_mul(q, left_inv(r, i)));
  }
  // col j -= q * col t
  void col_axpy(std::size_t j, std::size_t t, const T& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows(); ++r) d(r, j) = checked_sub(d(r, j), checked_mul(q, d(r, t)));
    if (!track) return;
    for (std::size_t r = 0; r < right.rows(); ++r)
      right(r, j) = checked_sub(right(r, j), checked_mul(q, right(r, t)));
    for (std::size_t c = 0; c < right_inv.cols(); ++c)
      right_inv(t, c) = checked_add(right_inv(t, c), checked_mul(q, right_inv(j, c)));
  }
  void row_swap(std::size_t i, std::size_t t) {
    if (i == t) return;
    for (std::size_t c = 0; c < d.cols(); ++c) std::swap(d(i, c), d(t, c));
    if (!track) return;
    for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left(i, c), left(t, c));
    for (std::size_t r = 0; r < left_inv.rows(); ++r) std::swap(left_inv(r, i), left_inv(r, t));
  }
  void col_swap(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t r = 0; r < d.rows(); ++r) std::swap(d(r, j), d(r, t));
    if (!track) return;
    for (std::size_t r = 0; r < right.rows(); ++r) std::swap(right(r, j), right(r, t));
    for (std::size_t c = 0; c < right_inv.cols(); ++c) std::swap(right_inv(j, c), right_inv(t, c));
  }
  void row_negate(std::size_t t) {
    for (std::size_t c = 0; c < d.cols(); ++c) d(t, c) = checked_neg(d(t, c));
    if (!track) return;
    for (std::size_t c = 0; c < left.cols(); ++c) left(t, c) = checked_neg(left(t, c));
    for (std::size_t r = 0; r < left_inv.rows(); ++r) left_inv(r, t) = checked_neg(left_inv(r, t));
  }
};

template <class T>
SnfState<T> smith_impl(const Matrix<T>& a, bool track) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState<T> s{a, {}, {}, {}, {}, track};
  if (track) {
    s.left = s.left_inv = Matrix<T>::identity(m);
    s.right = s.right_inv = Matrix<T>::identity(n);
  }
  auto& d = s.d;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pr = t, pc = t;
    T best = 0;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c)
        if (d(r, c) != 0 && (!found || abs_value(d(r, c)) < best)) {
          found = true;
          best = abs_value(d(r, c));
          pr = r;
          pc = c;
        }
    if (!found) break;
    s.row_swap(t, pr);
    s.col_swap(t, pc);
    for (;;) {
      // Bring the smallest nonzero entry of row t / column t to the corner,
      // then reduce the rest of that row and column modulo it.
      std::size_t br = t, bc = t;
      for (std::size_t r = t + 1; r < m; ++r)
        if (d(r, t) != 0 && abs_value(d(r, t)) < abs_value(d(br, bc))) br = r, bc = t;
      for (std::size_t c = t + 1; c < n; ++c)
        if (d(t, c) != 0 && abs_value(d(t, c)) < abs_value(d(br, bc))) br = t, bc = c;
      s.row_swap(t, br);
      s.col_swap(t, bc);
      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (d(r, t) == 0) continue;
        s.row_axpy(r, t, T(d(r, t) / d(t, t)));
        clean = clean && d(r, t) == 0;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (d(t, c) == 0) continue;
        s.col_axpy(c, t, T(d(t, c) / d(t, t)));
        clean = clean && d(t, c) == 0;
      }
      if (!clean) continue;
      // Divisibility: fold an offending row into the pivot row and repeat.
      std::size_t bad = m;
      for (std::size_t r = t + 1; r < m && bad == m; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (d(r, c) % d(t, t) != 0) {
            bad = r;
            break;
          }
      if (bad == m) break;
      s.row_axpy(t, bad, T(-1));
    }
    if (d(t, t) < 0) s.row_negate(t);
  }
  return s;
}

}  // namespace detail

/// A = U * D * V with U, V unimodular and D diagonal with d1 | d2 | ...
struct SNFResult {
  IntMatrix U, D, V;
  /// Left/right transforms with left * A * right = D.
  IntMatrix left, right;

  std::vector<BigInt> invariant_factors() const {
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) out.push_back(D(i, i));
    return out;
  }
  std::size_t rank() const { return invariant_factors().size(); }
};

inline SNFResult smith_normal_form(const IntMatrix& a) {
  auto pack = [](auto&& st) {
    using T = std::decay_t<decltype(st.d(0, 0))>;
    if constexpr (std::is_same_v<T, BigInt>)
      return SNFResult{st.left_inv, st.d, st.right_inv, st.left, st.right};
    else
      return SNFResult{convert<BigInt>(st.left_inv), convert<BigInt>(st.d), convert<BigInt>(st.right_inv),
                       convert<BigInt>(st.left), convert<BigInt>(st.right)};
  };
  if (a.rows() == 0 || a.cols() == 0) {
    return SNFResult{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols()), IntMatrix::identity(a.rows()),
                     IntMatrix::identity(a.cols())};
  }
  // int64 first; on overflow redo everything in arbitrary precision.
  bool fits = true;
  const BigInt lim = BigInt(1) << 40;
  for (std::size_t r = 0; r < a.rows() && fits; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (boost::multiprecision::abs(a(r, c)) > lim) {
        fits = false;
        break;
      }
  if (fits) {
    try {
      Matrix<std::int64_t> small(a.rows(), a.cols());
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) small(r, c) = a(r, c).convert_to<std::int64_t>();
      return pack(detail::smith_impl(small, true));
    } catch (const OverflowError&) {
    }
  }
  return pack(detail::smith_impl(a, true));
}

/// Nonzero invariant factors only, without transforms.
template <class T>
std::vector<BigInt> invariant_factors_dense(const Matrix<T>& a) {
  std::vector<BigInt> out;
  if (a.rows() == 0 || a.cols() == 0) return out;
  auto st = detail::smith_impl(a, false);
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (st.d(i, i) != 0) out.push_back(BigInt(st.d(i, i)));
  return out;
}

/// Column-major sparse integer matrix; each column sorted by row.
struct SparseIntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }

  IntMatrix to_dense() const {
    IntMatrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
      for (auto [r, v] : columns[c]) m(r, c) = v;
    return m;
  }
};

namespace detail {

template <class T>
using SparseColumn = std::vector<std::pair<std::uint32_t, T>>;

// col_target -= q * col_source, both sorted.
template <class T>
void sparse_axpy(SparseColumn<T>& target, const SparseColumn<T>& source, const T& q,
                 std::vector<std::vector<std::uint32_t>>& row_cols, std::uint32_t target_id) {
  SparseColumn<T> out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(target[i++]);
    } else if (i == target.size() || source[j].first < target[i].first) {
      out.emplace_back(source[j].first, checked_neg(checked_mul(q, source[j].second)));
      row_cols[source[j].first].push_back(target_id);
      ++j;
    } else {
      T v = checked_sub(target[i].second, checked_mul(q, source[j].second));
      if (v != 0) out.emplace_back(target[i].first, v);
      ++i;
      ++j;
    }
  }
  target.swap(out);
}

template <class T>
std::vector<BigInt> sparse_invariant_factors(const SparseIntMatrix& a) {
  const std::size_t ncols = a.cols;
  std::vector<SparseColumn<T>> cols(ncols);
  std::vector<std::vector<std::uint32_t>> row_cols(a.rows);
  for (std::size_t c = 0; c < ncols; ++c)
    for (auto [r, v] : a.columns[c])
      if (v != 0) {
        cols[c].emplace_back(r, T(v));
        row_cols[r].push_back(static_cast<std::uint32_t>(c));
      }
  std::vector<bool> alive(ncols, true);
  std::size_t units = 0;
  auto row_has = [&](std::uint32_t c, std::uint32_t r) -> const T* {
    const auto& col = cols[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::uint32_t x) { return e.first < x; });
    return (it != col.end() && it->first == r) ? &it->second : nullptr;
  };
  for (;;) {
    // Sparsest live column with a unit entry; within it, the sparsest row.
    std::size_t pc = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!alive[c]) continue;
      if (cols[c].empty()) {
        alive[c] = false;
        continue;
      }
      if (pc != ncols && cols[c].size() >= cols[pc].size()) continue;
      bool unit = std::any_of(cols[c].begin(), cols[c].end(), [](const auto& e) { return e.second == 1 || e.second == -1; });
      if (unit) pc = c;
    }
    if (pc == ncols) break;
    std::uint32_t pr = 0;
    T pv = 0;
    std::size_t best = SIZE_MAX;
    for (const auto& [r, v] : cols[pc]) {
      if (v != 1 && v != -1) continue;
      if (row_cols[r].size() < best) {
        best = row_cols[r].size();
        pr = r;
        pv = v;
      }
    }
    auto others = row_cols[pr];
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (auto c : others) {
      if (c == pc || !alive[c]) continue;
      const T* entry = row_has(c, pr);
      if (!entry) continue;
      T q = checked_mul(*entry, pv);  // pv is its own inverse
      sparse_axpy(cols[c], cols[pc], q, row_cols, c);
    }
    alive[pc] = false;
    cols[pc].clear();
    row_cols[pr].clear();
    ++units;
  }
  // Whatever survives has no unit entries; finish densely.
  std::vector<std::uint32_t> live_rows, live_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (alive[c] && !cols[c].empty()) {
      live_cols.push_back(static_cast<std::uint32_t>(c));
      for (const auto& e : cols[c]) live_rows.push_back(e.first);
    }
  std::sort(live_rows.begin(), live_rows.end());
  live_rows.erase(std::unique(live_rows.begin(), live_rows.end()), live_rows.end());
  std::vector<BigInt> out(units, BigInt(1));
  if (!live_cols.empty()) {
    Matrix<BigInt> rest(live_rows.size(), live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (const auto& [r, v] : cols[live_cols[j]]) {
        auto i = static_cast<std::size_t>(std::lower_bound(live_rows.begin(), live_rows.end(), r) - live_rows.begin());
        rest(i, j) = BigInt(v);
      }
    auto tail = invariant_factors_dense(rest);
    out.insert(out.end(), tail.begin(), tail.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Nonzero invariant factors of a sparse integer matrix, via elimination on
/// unit pivots and a dense Smith normal form of the remainder. Runs in int64
/// and restarts with arbitrary precision on overflow.
inline std::vector<BigInt> invariant_factors(const SparseIntMatrix& a) {
  try {
    return detail::sparse_invariant_factors<std::int64_t>(a);
  } catch (const OverflowError&) {
    return detail::sparse_invariant_factors<BigInt>(a);
  }
}

}  // namespace cuspforge
