#pragma once

// Brute-force LP oracle: enumerates every column subset, solves the square
// or overdetermined system by Gaussian elimination, keeps nonnegative unique
// solutions. Only for bounded programs.

#include <optional>
#include <random>
#include <vector>

#include "scl/lp.hpp"

namespace scl::testing {

// max over basic feasible solutions, or nullopt when none exists.
inline std::optional<Rational> enumerate_vertices(const lp::LinearProgram& lp) {
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(m), c(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : lp.rows[i].entries) a[i][e.var] += e.coef;
    b[i] = lp.rows[i].rhs;
  }
  for (const auto& e : lp.objective) c[e.var] += e.coef;

  std::optional<Rational> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (mask >> j & 1) cols.push_back(j);
    const std::size_t k = cols.size();
    if (k > m) continue;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(k + 1));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < k; ++j) t[i][j] = a[i][cols[j]];
      t[i][k] = b[i];
    }
    std::size_t r = 0;
    bool independent = true;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t piv = r;
      while (piv < m && t[piv][j] == 0) ++piv;
      if (piv == m) {
        independent = false;
        break;
      }
      std::swap(t[piv], t[r]);
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r || t[i][j] == 0) continue;
        const Rational f = t[i][j] / t[r][j];
        for (std::size_t q = j; q <= k; ++q) t[i][q] -= f * t[r][q];
      }
      ++r;
    }
    if (!independent) continue;
    bool consistent = true;
    for (std::size_t i = r; i < m; ++i) consistent = consistent && t[i][k] == 0;
    if (!consistent) continue;
    bool nonnegative = true;
    Rational value = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const Rational x = t[j][k] / t[j][j];
      nonnegative = nonnegative && x >= 0;
      value += c[cols[j]] * x;
    }
    if (!nonnegative) continue;
    if (!best || value > *best) best = value;
  }
  return best;
}

// At most 6 variables and 4 rows; the first row has positive coefficients
// and nonnegative rhs, so the feasible region is bounded.
inline lp::LinearProgram random_small_lp(std::mt19937_64& rng) {
  lp::LinearProgram lp;
  lp.num_vars = 1 + rng() % 6;
  const std::size_t m = 1 + rng() % 4;
  auto small = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); };
  for (std::size_t i = 0; i < m; ++i) {
    lp::Constraint row;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
      const long v = i == 0 ? small(1, 3) : (rng() % 3 == 0 ? 0 : small(-3, 3));
      if (v != 0) row.entries.push_back({j, Rational(v)});
    }
    row.rhs = i == 0 ? Rational(small(0, 6), small(1, 3)) : Rational(small(-4, 4), small(1, 2));
    row.rhs.canonicalize();
    lp.rows.push_back(row);
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const long v = small(-3, 3);
    if (v != 0) lp.objective.push_back({j, Rational(v, small(1, 2))});
  }
  for (auto& e : lp.objective) e.coef.canonicalize();
  return lp;
}

}  // namespace scl::testing
