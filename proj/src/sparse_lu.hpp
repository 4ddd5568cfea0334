#pragma once

// Sparse LU factorization with Markowitz-style pivot selection, shared by the
// exact (mpq) and the approximate (double) simplex. Works on rectangular
// input and reports the rank it found.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "scl/rational.hpp"

namespace scl::lp::detail {

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool positive(const Rational& x) { return sgn(x) > 0; }
  static bool negative(const Rational& x) { return sgn(x) < 0; }
  static double magnitude(const Rational& x) { return std::fabs(x.get_d()); }
  // Prefer small pivots to keep intermediate denominators small.
  static bool acceptable_pivot(const Rational&, double) { return true; }
  static Rational from(const Rational& x) { return x; }
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr double kDrop = 1e-12;
  static constexpr double kTol = 1e-9;
  static bool is_zero(double x) { return std::fabs(x) <= kDrop; }
  static bool positive(double x) { return x > kTol; }
  static bool negative(double x) { return x < -kTol; }
  static double magnitude(double x) { return std::fabs(x); }
  static bool acceptable_pivot(double a, double column_max) {
    return std::fabs(a) >= 0.01 * column_max && std::fabs(a) > 1e-9;
  }
  static double from(const Rational& x) { return x.get_d(); }
};

template <class T>
using SparseVec = std::vector<std::pair<int, T>>;

template <class T>
class SparseLu {
  using Traits = NumTraits<T>;

 public:
  // columns[j] holds (row, value) pairs; rows are in [0, m).
  void factor(std::size_t m, const std::vector<SparseVec<T>>& columns) {
    m_ = m;
    n_ = columns.size();
    pivot_row_.clear();
    pivot_col_.clear();
    pivot_val_.clear();
    lower_.clear();
    upper_.clear();

    std::vector<SparseVec<T>> rows(m);
    std::vector<std::vector<int>> col_rows(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      for (const auto& [r, v] : columns[j]) {
        if (Traits::is_zero(v)) continue;
        rows[r].push_back({static_cast<int>(j), v});
        col_rows[j].push_back(r);
      }
    }
    std::vector<char> col_done(n_, 0), row_done(m, 0);
    std::vector<int> where(n_, -1);
    std::vector<int> live_cols;
    live_cols.reserve(n_);
    for (std::size_t j = 0; j < n_; ++j) live_cols.push_back(static_cast<int>(j));

    auto erase_value = [](std::vector<int>& v, int x) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == x) {
          v[i] = v.back();
          v.pop_back();
          return;
        }
      }
    };

    while (true) {
      // Column with fewest active entries; empty columns are dependent.
      int best_col = -1;
      std::size_t best_count = 0;
      std::size_t w = 0;
      for (int c : live_cols) {
        if (col_done[c]) continue;
        live_cols[w++] = c;
        std::size_t cnt = col_rows[c].size();
        if (cnt == 0) continue;
        if (best_col < 0 || cnt < best_count) {
          best_col = c;
          best_count = cnt;
          if (cnt == 1) break;
        }
      }
      if (best_col < 0) break;
      // Finish compacting after an early break.
      {
        std::size_t r = w;
        for (std::size_t i = w; i < live_cols.size(); ++i) {
          int c = live_cols[i];
          if (!col_done[c]) live_cols[r++] = c;
        }
        live_cols.resize(r);
      }

      const int c = best_col;
      double col_max = 0.0;
      for (int r : col_rows[c]) {
        for (const auto& [cc, v] : rows[r])
          if (cc == c) col_max = std::max(col_max, Traits::magnitude(v));
      }
      int best_row = -1;
      std::size_t best_len = 0;
      T pivot{};
      bool best_unit = false;
      for (int r : col_rows[c]) {
        const T* val = nullptr;
        for (const auto& [cc, v] : rows[r])
          if (cc == c) val = &v;
        if (!val || !Traits::acceptable_pivot(*val, col_max)) continue;
        std::size_t len = rows[r].size();
        bool unit = Traits::magnitude(*val) == 1.0;
        bool better = best_row < 0 || len < best_len ||
                      (len == best_len && unit && !best_unit);
        if (better) {
          best_row = r;
          best_len = len;
          pivot = *val;
          best_unit = unit;
        }
      }
      if (best_row < 0) {
        // Only tiny entries remain in this column: treat it as dependent.
        for (int r : col_rows[c]) {
          auto& row = rows[r];
          for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i].first == c) {
              row[i] = row.back();
              row.pop_back();
              break;
            }
          }
        }
        col_rows[c].clear();
        continue;
      }

      const int r = best_row;
      const std::size_t k = pivot_row_.size();
      pivot_row_.push_back(r);
      pivot_col_.push_back(c);
      pivot_val_.push_back(pivot);
      row_done[r] = 1;
      col_done[c] = 1;

      SparseVec<T> urow;
      urow.reserve(rows[r].size());
      for (auto& [cc, v] : rows[r]) {
        erase_value(col_rows[cc], r);
        if (cc != c) urow.push_back({cc, v});
      }
      rows[r].clear();
      std::vector<int> targets = col_rows[c];
      col_rows[c].clear();

      SparseVec<T> lcol;
      lcol.reserve(targets.size());
      for (int i : targets) {
        auto& row = rows[i];
        T factor{};
        for (std::size_t t = 0; t < row.size(); ++t) {
          if (row[t].first == c) {
            factor = row[t].second / pivot;
            row[t] = row.back();
            row.pop_back();
            break;
          }
        }
        for (std::size_t t = 0; t < row.size(); ++t) where[row[t].first] = static_cast<int>(t);
        bool cancelled = false;
        for (const auto& [j, u] : urow) {
          int at = where[j];
          if (at >= 0) {
            row[at].second -= factor * u;
            if (Traits::is_zero(row[at].second)) cancelled = true;
          } else {
            where[j] = static_cast<int>(row.size());
            row.push_back({j, T(-(factor * u))});
            col_rows[j].push_back(i);
          }
        }
        for (const auto& e : row) where[e.first] = -1;
        if (cancelled) {
          std::size_t out = 0;
          for (std::size_t t = 0; t < row.size(); ++t) {
            if (Traits::is_zero(row[t].second)) {
              erase_value(col_rows[row[t].first], i);
            } else {
              if (out != t) row[out] = std::move(row[t]);
              ++out;
            }
          }
          row.resize(out);
        }
        lcol.push_back({i, std::move(factor)});
      }
      lower_.push_back(std::move(lcol));
      upper_.push_back(std::move(urow));
      (void)k;
    }

    row_pivoted_.assign(m, 0);
    col_pivoted_.assign(n_, 0);
    for (int r : pivot_row_) row_pivoted_[r] = 1;
    for (int c : pivot_col_) col_pivoted_[c] = 1;
  }

  std::size_t rank() const { return pivot_row_.size(); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  bool row_pivoted(std::size_t r) const { return row_pivoted_[r]; }
  bool col_pivoted(std::size_t c) const { return col_pivoted_[c]; }

  // Solves B x = rhs on the pivoted subsystem. rhs is indexed by row and is
  // overwritten; x is indexed by column (unpivoted columns are left zero).
  void ftran(std::vector<T>& rhs, std::vector<T>& x) const {
    x.assign(n_, T{});
    for (std::size_t k = 0; k < pivot_row_.size(); ++k) {
      const T& pv = rhs[pivot_row_[k]];
      if (Traits::is_zero(pv)) continue;
      for (const auto& [i, l] : lower_[k]) rhs[i] -= l * pv;
    }
    for (std::size_t k = pivot_row_.size(); k-- > 0;) {
      T s = rhs[pivot_row_[k]];
      for (const auto& [j, u] : upper_[k]) {
        if (!Traits::is_zero(x[j])) s -= u * x[j];
      }
      if (!Traits::is_zero(s)) x[pivot_col_[k]] = s / pivot_val_[k];
    }
  }

  // Solves y^T B = c on the pivoted subsystem. c is indexed by column and is
  // overwritten; y is indexed by row and supported on pivot rows.
  void btran(std::vector<T>& c, std::vector<T>& y) const {
    y.assign(m_, T{});
    for (std::size_t k = 0; k < pivot_row_.size(); ++k) {
      const T& cv = c[pivot_col_[k]];
      if (Traits::is_zero(cv)) continue;
      T z = cv / pivot_val_[k];
      for (const auto& [j, u] : upper_[k]) c[j] -= u * z;
      y[pivot_row_[k]] = std::move(z);
    }
    for (std::size_t k = pivot_row_.size(); k-- > 0;) {
      T& yp = y[pivot_row_[k]];
      for (const auto& [i, l] : lower_[k]) {
        if (!Traits::is_zero(y[i])) yp -= l * y[i];
      }
    }
  }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::vector<int> pivot_row_;
  std::vector<int> pivot_col_;
  std::vector<T> pivot_val_;
  std::vector<SparseVec<T>> lower_;  // per pivot: (row, multiplier)
  std::vector<SparseVec<T>> upper_;  // per pivot: (col, value), later columns
  std::vector<char> row_pivoted_;
  std::vector<char> col_pivoted_;
};

}  // namespace scl::lp::detail
