#pragma once

// Revised primal simplex over a column-stored equality-form LP, templated on
// the scalar type. Artificial variables n..n+m-1 carry the identity basis.

#include <chrono>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "scl/error.hpp"
#include "scl/lp.hpp"
#include "sparse_lu.hpp"

namespace scl::lp::detail {

template <class T>
struct ColumnMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> start;  // cols + 1
  std::vector<int> row_index;
  std::vector<T> value;

  template <class F>
  void for_column(std::size_t j, F&& f) const {
    for (std::size_t t = start[j]; t < start[j + 1]; ++t) f(row_index[t], value[t]);
  }
};

// Rows with negative right-hand side are negated so that b >= 0.
template <class T>
struct StandardForm {
  ColumnMatrix<T> a;
  std::vector<T> b;
  std::vector<T> c;
};

template <class T>
StandardForm<T> to_standard_form(const LinearProgram& lp) {
  using Traits = NumTraits<T>;
  StandardForm<T> sf;
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  sf.a.rows = m;
  sf.a.cols = n;
  std::vector<std::vector<std::pair<int, T>>> cols(n);
  sf.b.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(lp.rows[i].rhs) < 0;
    sf.b[i] = Traits::from(flip ? Rational(-lp.rows[i].rhs) : lp.rows[i].rhs);
    for (const auto& e : lp.rows[i].entries) {
      if (sgn(e.coef) == 0) continue;
      cols[e.var].push_back({static_cast<int>(i), Traits::from(flip ? Rational(-e.coef) : e.coef)});
    }
  }
  sf.a.start.assign(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    auto& col = cols[j];
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    // Merge duplicate row entries.
    std::size_t out = 0;
    for (std::size_t t = 0; t < col.size(); ++t) {
      if (out > 0 && col[out - 1].first == col[t].first)
        col[out - 1].second += col[t].second;
      else
        col[out++] = col[t];
    }
    col.resize(out);
    for (auto& [r, v] : col) {
      if (Traits::is_zero(v)) continue;
      sf.a.row_index.push_back(r);
      sf.a.value.push_back(v);
    }
    sf.a.start[j + 1] = sf.a.row_index.size();
  }
  sf.c.assign(n, T{});
  for (const auto& e : lp.objective) sf.c[e.var] += Traits::from(e.coef);
  return sf;
}

enum class PricingRule { Bland, Dantzig, Devex };

template <class T>
class RevisedSimplex {
  using Traits = NumTraits<T>;

 public:
  enum class Outcome { Optimal, Unbounded, Infeasible, IterationLimit };

  RevisedSimplex(const StandardForm<T>& sf, PricingRule rule, const SolveOptions& opts)
      : a_(sf.a), b_(sf.b), cost_(sf.c), rule_(rule), opts_(opts),
        m_(sf.a.rows), n_(sf.a.cols) {
    basis_.resize(m_);
    position_.assign(n_ + m_, -1);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      position_[n_ + i] = static_cast<int>(i);
    }
    row_start_.assign(m_ + 1, 0);
    for (std::size_t t = 0; t < a_.row_index.size(); ++t) ++row_start_[a_.row_index[t] + 1];
    for (std::size_t i = 0; i < m_; ++i) row_start_[i + 1] += row_start_[i];
    row_col_.resize(a_.row_index.size());
    row_value_.resize(a_.row_index.size());
    std::vector<std::size_t> fill(row_start_.begin(), row_start_.end() - 1);
    for (std::size_t j = 0; j < n_; ++j) {
      a_.for_column(j, [&](int r, const T& v) {
        row_col_[fill[r]] = j;
        row_value_[fill[r]++] = v;
      });
    }
    mark_.assign(n_, 0);
    refactor();
  }

  std::size_t pivots() const { return pivots_; }
  void set_iteration_limit(std::size_t limit) { iteration_limit_ = limit; }

  // Phase 1: drive the artificial sum to zero.
  Outcome phase_one() {
    std::vector<T> c1(n_ + m_, T{});
    for (std::size_t i = 0; i < m_; ++i) c1[n_ + i] = T(-1);
    Outcome out = run(c1);
    if (out == Outcome::IterationLimit) return out;
    T infeasibility{};
    for (std::size_t p = 0; p < m_; ++p)
      if (basis_[p] >= n_) infeasibility += x_[p];
    if (Traits::positive(infeasibility)) return Outcome::Infeasible;
    return Outcome::Optimal;
  }

  // Replace the basis by the given columns (ids >= n name artificials),
  // completed with artificials on rows they do not span. Dependent columns
  // are dropped.
  void install_basis(const std::vector<std::size_t>& columns) {
    std::vector<SparseVec<T>> cand;
    std::vector<std::size_t> ids;
    std::vector<char> taken(n_ + m_, 0);
    for (std::size_t j : columns) {
      if (j >= n_ + m_ || taken[j]) continue;
      taken[j] = 1;
      SparseVec<T> col;
      if (j >= n_)
        col.push_back({static_cast<int>(j - n_), T(1)});
      else
        a_.for_column(j, [&](int r, const T& v) { col.push_back({r, v}); });
      cand.push_back(std::move(col));
      ids.push_back(j);
    }
    SparseLu<T> lu;
    lu.factor(m_, cand);
    std::fill(position_.begin(), position_.end(), -1);
    std::size_t p = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!lu.col_pivoted(k)) continue;
      basis_[p] = ids[k];
      position_[ids[k]] = static_cast<int>(p);
      ++p;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      if (lu.row_pivoted(r)) continue;
      basis_[p] = n_ + r;
      position_[n_ + r] = static_cast<int>(p);
      ++p;
    }
    refactor();
  }

  // Structural basics nonnegative, artificial basics zero.
  bool primal_feasible() const {
    for (std::size_t q = 0; q < m_; ++q) {
      if (Traits::negative(x_[q])) return false;
      if (basis_[q] >= n_ && !Traits::is_zero(x_[q])) return false;
    }
    return true;
  }

  // Dual simplex toward primal feasibility. Positive phase-two reduced costs
  // at the start are zeroed by a temporary cost shift so that the basis is
  // dual feasible; phase_two then works with the true costs. Leaving and
  // entering ties go to the smallest index.
  Outcome dual_phase() {
    std::vector<T> c(n_ + m_, T{});
    for (std::size_t j = 0; j < n_; ++j) c[j] = cost_[j];
    std::vector<T> costs(m_), y, d(n_), rho, alpha;
    for (std::size_t p = 0; p < m_; ++p) costs[p] = c[basis_[p]];
    btran(costs, y);
    for (std::size_t j = 0; j < n_; ++j) {
      if (position_[j] >= 0) continue;
      T dj = reduced_cost(j, c, y);
      if (Traits::positive(dj)) c[j] -= dj;
    }
    while (true) {
      check_deadline();
      std::size_t leave = m_;
      for (std::size_t p = 0; p < m_; ++p) {
        const bool bad = Traits::negative(x_[p]) || (basis_[p] >= n_ && !Traits::is_zero(x_[p]));
        if (bad && (leave == m_ || basis_[p] < basis_[leave])) leave = p;
      }
      if (leave == m_) return Outcome::Optimal;
      const bool below = Traits::negative(x_[leave]);
      for (std::size_t p = 0; p < m_; ++p) costs[p] = c[basis_[p]];
      btran(costs, y);
      std::vector<T> e(m_, T{});
      e[leave] = T(1);
      btran(e, rho);
      std::size_t entering = n_;
      T best{};
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        T arj{};
        a_.for_column(j, [&](int r, const T& v) {
          if (!Traits::is_zero(rho[r])) arj += rho[r] * v;
        });
        if (below ? !Traits::negative(arj) : !Traits::positive(arj)) continue;
        T ratio = reduced_cost(j, c, y) / arj;
        if (Traits::negative(ratio)) ratio = -ratio;
        if (entering == n_ || ratio < best) {
          entering = j;
          best = ratio;
        }
      }
      if (entering == n_) return Outcome::Infeasible;
      ftran_column(entering, alpha);
      pivot(entering, leave, alpha);
    }
  }

  // Pivot basic artificials (at zero) out wherever a structural column can
  // replace them. Those that remain sit on redundant rows. In exact mode the
  // entering column minimizes |d_j / alpha_j| so that dual feasibility for
  // the phase-two costs is kept; in floating point the largest pivot wins.
  void drive_out_artificials() {
    std::vector<T> c(n_ + m_, T{});
    for (std::size_t j = 0; j < n_; ++j) c[j] = cost_[j];
    std::vector<T> costs(m_), y;
    for (std::size_t p = 0; p < m_; ++p) {
      if (basis_[p] < n_) continue;
      check_deadline();
      std::vector<T> e(m_, T{});
      e[p] = T(1);
      std::vector<T> rho;
      btran(e, rho);
      if constexpr (Traits::exact) {
        for (std::size_t q = 0; q < m_; ++q) costs[q] = c[basis_[q]];
        btran(costs, y);
      }
      std::size_t best = n_;
      double best_mag = 0.0;
      T best_ratio{};
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] >= 0) continue;
        T dot{};
        a_.for_column(j, [&](int r, const T& v) {
          if (!Traits::is_zero(rho[r])) dot += rho[r] * v;
        });
        if (Traits::is_zero(dot)) continue;
        if constexpr (Traits::exact) {
          T ratio = reduced_cost(j, c, y) / dot;
          if (Traits::negative(ratio)) ratio = -ratio;
          if (best == n_ || ratio < best_ratio) {
            best = j;
            best_ratio = ratio;
          }
        } else {
          double mag = std::fabs(dot);
          if (mag >= 1e-7 && mag > best_mag) {
            best_mag = mag;
            best = j;
          }
        }
      }
      if (best == n_) continue;
      std::vector<T> alpha;
      ftran_column(best, alpha);
      pivot(best, p, alpha);
    }
  }

  // Phase 2 on the original objective; artificials never enter.
  Outcome phase_two() {
    std::vector<T> c2(n_ + m_, T{});
    for (std::size_t j = 0; j < n_; ++j) c2[j] = cost_[j];
    return run(c2);
  }

  // Row duals of the current basis under the phase-2 costs.
  std::vector<T> duals() const {
    std::vector<T> costs(m_), y;
    for (std::size_t p = 0; p < m_; ++p) costs[p] = basis_[p] < n_ ? cost_[basis_[p]] : T{};
    btran(costs, y);
    return y;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }
  const std::vector<T>& basic_values() const { return x_; }
  std::size_t num_structural() const { return n_; }

 private:
  void check_deadline() const {
    if (opts_.deadline && std::chrono::steady_clock::now() > *opts_.deadline)
      throw Error(Errc::Timeout, "LP solve exceeded its deadline");
  }

  void refactor() {
    std::vector<SparseVec<T>> cols(m_);
    for (std::size_t p = 0; p < m_; ++p) {
      std::size_t var = basis_[p];
      if (var >= n_) {
        cols[p].push_back({static_cast<int>(var - n_), T(1)});
      } else {
        a_.for_column(var, [&](int r, const T& v) { cols[p].push_back({r, v}); });
      }
    }
    lu_.factor(m_, cols);
    if (lu_.rank() < m_) {
      if constexpr (Traits::exact) {
        throw Error(Errc::InternalInvariantViolation, "exact basis became singular");
      } else {
        // Numerical rank loss: swap dependent columns for artificials.
        std::vector<std::size_t> free_rows;
        for (std::size_t r = 0; r < m_; ++r)
          if (!lu_.row_pivoted(r)) free_rows.push_back(r);
        std::size_t k = 0;
        for (std::size_t p = 0; p < m_; ++p) {
          if (lu_.col_pivoted(p)) continue;
          position_[basis_[p]] = -1;
          basis_[p] = n_ + free_rows[k++];
          position_[basis_[p]] = static_cast<int>(p);
        }
        refactor();
        return;
      }
    }
    etas_.clear();
    ++factorizations_;
    std::vector<T> rhs = b_;
    lu_.ftran(rhs, x_);
    if constexpr (!Traits::exact) {
      for (auto& v : x_)
        if (v < 0 && v > -1e-9) v = 0;
    }
  }

  struct Eta {
    std::size_t position;
    SparseVec<T> alpha;  // includes the pivot entry
    T pivot;
  };

  void ftran_column(std::size_t var, std::vector<T>& out) const {
    std::vector<T> rhs(m_, T{});
    if (var >= n_)
      rhs[var - n_] = T(1);
    else
      a_.for_column(var, [&](int r, const T& v) { rhs[r] = v; });
    lu_.ftran(rhs, out);
    for (const Eta& e : etas_) {
      T xr = out[e.position];
      if (Traits::is_zero(xr)) continue;
      xr /= e.pivot;
      for (const auto& [i, v] : e.alpha) {
        if (static_cast<std::size_t>(i) != e.position) out[i] -= v * xr;
      }
      out[e.position] = xr;
    }
  }

  // costs indexed by basis position (overwritten); y indexed by row.
  void btran(std::vector<T>& costs, std::vector<T>& y) const {
    for (std::size_t k = etas_.size(); k-- > 0;) {
      const Eta& e = etas_[k];
      T s = costs[e.position];
      for (const auto& [i, v] : e.alpha) {
        if (static_cast<std::size_t>(i) != e.position && !Traits::is_zero(costs[i]))
          s -= v * costs[i];
      }
      costs[e.position] = s / e.pivot;
    }
    lu_.btran(costs, y);
  }

  T reduced_cost(std::size_t j, const std::vector<T>& c, const std::vector<T>& y) const {
    T d = c[j];
    if (j >= n_) {
      d -= y[j - n_];
    } else {
      a_.for_column(j, [&](int r, const T& v) {
        if (!Traits::is_zero(y[r])) d -= y[r] * v;
      });
    }
    return d;
  }

  void pivot(std::size_t entering, std::size_t leave_pos, const std::vector<T>& alpha) {
    const T theta = x_[leave_pos] / alpha[leave_pos];
    if (!Traits::is_zero(theta)) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (i != leave_pos && !Traits::is_zero(alpha[i])) x_[i] -= theta * alpha[i];
      }
    }
    x_[leave_pos] = theta;
    if constexpr (!Traits::exact) {
      for (auto& v : x_)
        if (v < 0 && v > -1e-9) v = 0;
    }
    position_[basis_[leave_pos]] = -1;
    basis_[leave_pos] = entering;
    position_[entering] = static_cast<int>(leave_pos);
    Eta e;
    e.position = leave_pos;
    e.pivot = alpha[leave_pos];
    for (std::size_t i = 0; i < m_; ++i)
      if (!Traits::is_zero(alpha[i])) e.alpha.push_back({static_cast<int>(i), alpha[i]});
    etas_.push_back(std::move(e));
    ++pivots_;
    if (etas_.size() >= kRefactorInterval) refactor();
  }

  // Reduced costs are priced in full after every factorization and updated
  // from the pivot row in between.
  Outcome run(const std::vector<T>& c) {
    std::size_t since_improvement = 0;
    bool bland = rule_ == PricingRule::Bland;
    const bool devex = rule_ == PricingRule::Devex;
    T last_objective = objective(c);
    std::vector<T> d(n_), alpha, row(n_);
    std::vector<std::size_t> touched;
    std::vector<double> weight;
    if (devex) weight.assign(n_, 1.0);
    std::size_t priced_at = factorizations_ - 1;
    bool fresh = false;
    for (std::size_t iter = 0;; ++iter) {
      if (iteration_limit_ && iter >= iteration_limit_) return Outcome::IterationLimit;
      check_deadline();
      if (priced_at != factorizations_) {
        price_all(c, d);
        priced_at = factorizations_;
        fresh = true;
      }

      // Entering variable; only structural columns may enter.
      std::size_t entering = n_;
      double best = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] >= 0 || !Traits::positive(d[j])) continue;
        if (bland) {
          entering = j;
          break;
        }
        const double mag = Traits::magnitude(d[j]);
        const double score = devex ? mag * mag / weight[j] : mag;
        if (entering == n_ || score > best) {
          best = score;
          entering = j;
        }
      }
      if (entering == n_) {
        // In floating point, confirm against a fresh factorization.
        if constexpr (!Traits::exact) {
          if (!fresh || !etas_.empty()) {
            refactor();
            continue;
          }
        }
        return Outcome::Optimal;
      }

      ftran_column(entering, alpha);
      std::size_t leave;
      if constexpr (Traits::exact)
        leave = ratio_test_exact(alpha, bland);
      else
        leave = ratio_test_harris(alpha);
      if (leave == m_) return Outcome::Unbounded;

      pivot_row(leave, row, touched);
      const T step = d[entering] / alpha[leave];
      for (std::size_t j : touched) {
        if (position_[j] >= 0 || j == entering) continue;
        d[j] -= step * row[j];
      }
      if (devex) update_devex(entering, leave, alpha, row, touched, weight);
      const std::size_t leaving = basis_[leave];
      for (std::size_t j : touched) row[j] = T{};
      pivot(entering, leave, alpha);
      d[entering] = T{};
      if (leaving < n_) d[leaving] = -step;
      fresh = false;

      if (rule_ != PricingRule::Bland) {
        T obj = objective(c);
        if (Traits::positive(obj - last_objective)) {
          last_objective = obj;
          since_improvement = 0;
          bland = false;
        } else if (++since_improvement > kStallLimit) {
          bland = true;
        }
      }
    }
  }

  void price_all(const std::vector<T>& c, std::vector<T>& d) const {
    std::vector<T> costs(m_), y;
    for (std::size_t p = 0; p < m_; ++p) costs[p] = c[basis_[p]];
    btran(costs, y);
    for (std::size_t j = 0; j < n_; ++j) d[j] = position_[j] >= 0 ? T{} : reduced_cost(j, c, y);
  }

  // Row `leave` of B^-1 A over the structural columns, accumulated through
  // the row-major copy of A. Entries outside `touched` are zero.
  void pivot_row(std::size_t leave, std::vector<T>& row, std::vector<std::size_t>& touched) {
    std::vector<T> e(m_, T{});
    e[leave] = T(1);
    std::vector<T> rho;
    btran(e, rho);
    touched.clear();
    for (std::size_t i = 0; i < m_; ++i) {
      if (Traits::is_zero(rho[i])) continue;
      for (std::size_t t = row_start_[i]; t < row_start_[i + 1]; ++t) {
        const std::size_t j = row_col_[t];
        if (!mark_[j]) {
          mark_[j] = 1;
          touched.push_back(j);
        }
        row[j] += rho[i] * row_value_[t];
      }
    }
    for (std::size_t j : touched) mark_[j] = 0;
  }

  // Devex reference weights, updated from the pivot row before the basis
  // changes.
  void update_devex(std::size_t entering, std::size_t leave, const std::vector<T>& alpha,
                    const std::vector<T>& row, const std::vector<std::size_t>& touched,
                    std::vector<double>& weight) const {
    const double pivot = Traits::magnitude(alpha[leave]);
    const double wq = weight[entering];
    double largest = 0.0;
    for (std::size_t j : touched) {
      if (position_[j] >= 0 || j == entering) continue;
      const double ratio = Traits::magnitude(row[j]) / pivot;
      if (ratio == 0.0) continue;
      weight[j] = std::max(weight[j], ratio * ratio * wq);
      largest = std::max(largest, weight[j]);
    }
    if (basis_[leave] < n_) {
      weight[basis_[leave]] = std::max(wq / (pivot * pivot), 1.0);
      largest = std::max(largest, weight[basis_[leave]]);
    }
    // Restart the reference framework once weights stop being informative.
    if (!(largest < kDevexReset)) std::fill(weight.begin(), weight.end(), 1.0);
  }

  // Basic artificials leave at ratio zero whenever touched.
  std::size_t ratio_test_exact(const std::vector<T>& alpha, bool bland) const {
    std::size_t leave = m_;
    T best_ratio{};
    for (std::size_t p = 0; p < m_; ++p) {
      T ratio;
      if (basis_[p] >= n_ && Traits::is_zero(x_[p]) && !Traits::is_zero(alpha[p])) {
        ratio = T{};
      } else if (Traits::positive(alpha[p])) {
        ratio = x_[p] / alpha[p];
      } else {
        continue;
      }
      bool take = leave == m_ || ratio < best_ratio ||
                  (ratio == best_ratio && (bland ? basis_[p] < basis_[leave]
                                                 : Traits::magnitude(alpha[p]) >
                                                       Traits::magnitude(alpha[leave])));
      if (take) {
        leave = p;
        best_ratio = ratio;
      }
    }
    return leave;
  }

  // Two-pass Harris test: bound the step with relaxed feasibility, then take
  // the largest pivot among the rows that block within that bound.
  std::size_t ratio_test_harris(const std::vector<T>& alpha) const {
    constexpr double kFeasTol = 1e-9;
    // Pivots below this, relative to the column, are never taken.
    const double tol = pivot_tolerance(alpha);
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < m_; ++p) {
      const double a = std::fabs(alpha[p]);
      if (a <= tol) continue;
      const double x = std::max(0.0, x_[p]);
      if (basis_[p] >= n_ && x <= kFeasTol) return artificial_leaving(alpha);
      if (alpha[p] < 0) continue;
      bound = std::min(bound, (x + kFeasTol) / a);
    }
    std::size_t leave = m_;
    double best = 0.0;
    for (std::size_t p = 0; p < m_; ++p) {
      const double a = alpha[p];
      if (a <= tol) continue;
      const double x = std::max(0.0, x_[p]);
      if (x / a <= bound && a > best) {
        best = a;
        leave = p;
      }
    }
    return leave;
  }

  double pivot_tolerance(const std::vector<T>& alpha) const {
    double amax = 0.0;
    for (std::size_t p = 0; p < m_; ++p) amax = std::max(amax, std::fabs(static_cast<double>(alpha[p])));
    return std::max(1e-7, 1e-7 * amax);
  }

  // Largest touched basic artificial at zero.
  std::size_t artificial_leaving(const std::vector<T>& alpha) const {
    const double tol = pivot_tolerance(alpha);
    std::size_t leave = m_;
    double best = 0.0;
    for (std::size_t p = 0; p < m_; ++p) {
      if (basis_[p] < n_ || x_[p] > 1e-9) continue;
      const double a = std::fabs(alpha[p]);
      if (a > tol && a > best) {
        best = a;
        leave = p;
      }
    }
    return leave;
  }

  T objective(const std::vector<T>& c) const {
    T s{};
    for (std::size_t p = 0; p < m_; ++p)
      if (!Traits::is_zero(c[basis_[p]])) s += c[basis_[p]] * x_[p];
    return s;
  }

  static constexpr std::size_t kRefactorInterval = Traits::exact ? 40 : 80;
  static constexpr std::size_t kStallLimit = 200;
  static constexpr double kDevexReset = 1e6;

  const ColumnMatrix<T>& a_;
  const std::vector<T>& b_;
  const std::vector<T>& cost_;
  PricingRule rule_;
  SolveOptions opts_;
  std::size_t m_;
  std::size_t n_;
  std::vector<std::size_t> basis_;
  std::vector<int> position_;
  std::vector<T> x_;
  SparseLu<T> lu_;
  std::vector<Eta> etas_;
  std::size_t pivots_ = 0;
  std::size_t factorizations_ = 0;
  std::vector<std::size_t> row_start_;  // row-major copy of A
  std::vector<std::size_t> row_col_;
  std::vector<T> row_value_;
  std::vector<char> mark_;
  std::size_t iteration_limit_ = 0;
};

}  // namespace scl::lp::detail
