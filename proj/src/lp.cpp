#include "scl/lp.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>

#include "scl/error.hpp"
#include "simplex.hpp"

namespace scl::lp {

namespace {

using detail::PricingRule;
using detail::RevisedSimplex;
using detail::StandardForm;
using detail::to_standard_form;

using ExactSimplex = RevisedSimplex<Rational>;

LpSolution extract(const LinearProgram& lp, const ExactSimplex& s, ExactSimplex::Outcome outcome) {
  LpSolution sol;
  sol.pivots = s.pivots();
  if (outcome == ExactSimplex::Outcome::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  const auto& basis = s.basis();
  const auto& values = s.basic_values();
  for (std::size_t p = 0; p < basis.size(); ++p) {
    if (basis[p] >= s.num_structural()) continue;
    sol.basis.push_back(basis[p]);
    if (sgn(values[p]) != 0) sol.assignment.push_back({basis[p], values[p]});
  }
  std::sort(sol.basis.begin(), sol.basis.end());
  std::sort(sol.assignment.begin(), sol.assignment.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  sol.optimum = 0;
  for (const auto& e : lp.objective) sol.optimum += e.coef * sol.value_of(e.var);
  return sol;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

void LinearProgram::validate() const {
  for (const auto& row : rows)
    for (const auto& e : row.entries)
      if (e.var >= num_vars) throw Error(Errc::InvalidArgument, "constraint entry names an unknown variable");
  for (const auto& e : objective)
    if (e.var >= num_vars) throw Error(Errc::InvalidArgument, "objective entry names an unknown variable");
}

Rational LpSolution::value_of(std::size_t var) const {
  auto it = std::lower_bound(assignment.begin(), assignment.end(), var,
                             [](const auto& entry, std::size_t v) { return entry.first < v; });
  if (it != assignment.end() && it->first == var) return it->second;
  return 0;
}

LpSolution solve_max(const LinearProgram& lp, const SolveOptions& opts) {
  lp.validate();
  const StandardForm<Rational> sf = to_standard_form<Rational>(lp);
  ExactSimplex s(sf, PricingRule::Bland, opts);
  if (s.phase_one() == ExactSimplex::Outcome::Infeasible) {
    LpSolution sol;
    sol.status = Status::Infeasible;
    sol.pivots = s.pivots();
    return sol;
  }
  s.drive_out_artificials();
  return extract(lp, s, s.phase_two());
}

namespace {

// Shift b by A*delta for a small positive pseudo-random delta. The shifted
// problem stays feasible and is generically nondegenerate; its optimal basis
// is then re-derived against the true b in exact arithmetic.
LinearProgram perturbed(const LinearProgram& lp) {
  LinearProgram shifted = lp;
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  std::vector<double> delta(lp.num_vars);
  for (auto& d : delta) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    d = 1e-6 * (1.0 + static_cast<double>(state >> 11) * 0x1.0p-53);
  }
  for (auto& row : shifted.rows) {
    double shift = 0.0;
    for (const auto& e : row.entries) shift += e.coef.get_d() * delta[e.var];
    row.rhs += Rational(shift);
  }
  return shifted;
}

using FloatSimplex = RevisedSimplex<double>;

std::size_t float_limit(const LinearProgram& lp) { return 50 * (lp.rows.size() + lp.num_vars) + 1000; }

}  // namespace

std::optional<std::vector<std::size_t>> approximate_basis(const LinearProgram& lp,
                                                          const SolveOptions& opts,
                                                          std::size_t* pivots) {
  lp.validate();
  const StandardForm<double> sf = to_standard_form<double>(perturbed(lp));
  FloatSimplex s(sf, PricingRule::Devex, opts);
  s.set_iteration_limit(float_limit(lp));
  auto report = [&] {
    if (pivots) *pivots = s.pivots();
  };
  if (s.phase_one() != FloatSimplex::Outcome::Optimal) {
    report();
    return std::nullopt;
  }
  s.drive_out_artificials();
  if (s.phase_two() != FloatSimplex::Outcome::Optimal) {
    report();
    return std::nullopt;
  }
  report();
  std::vector<std::size_t> basis = s.basis();
  std::sort(basis.begin(), basis.end());
  return basis;
}

std::optional<std::vector<std::size_t>> approximate_basis_columns(const LinearProgram& lp,
                                                                  std::vector<std::size_t> columns,
                                                                  const SolveOptions& opts,
                                                                  std::size_t* pivots) {
  lp.validate();
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  for (std::size_t j : columns)
    if (j >= n) throw Error(Errc::InvalidArgument, "column index out of range");

  std::vector<std::vector<std::pair<std::size_t, double>>> col(n);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& e : lp.rows[i].entries) col[e.var].push_back({i, e.coef.get_d()});
  std::vector<double> cost(n, 0.0);
  for (const auto& e : lp.objective) cost[e.var] += e.coef.get_d();

  // Restricted program over `columns`, its rhs shifted once by the initial
  // subset so that later rounds keep the previous basis primal feasible.
  auto restrict_to = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::size_t> local(n, n);
    for (std::size_t k = 0; k < cols.size(); ++k) local[cols[k]] = k;
    LinearProgram r;
    r.num_vars = cols.size();
    r.rows.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      r.rows[i].rhs = lp.rows[i].rhs;
      for (const auto& e : lp.rows[i].entries)
        if (local[e.var] < n) r.rows[i].entries.push_back({local[e.var], e.coef});
    }
    for (const auto& e : lp.objective)
      if (local[e.var] < n) r.objective.push_back({local[e.var], e.coef});
    return r;
  };
  std::vector<Rational> rhs;
  {
    const LinearProgram shifted = perturbed(restrict_to(columns));
    for (const auto& row : shifted.rows) rhs.push_back(row.rhs);
  }

  std::size_t total = 0;
  auto report = [&] {
    if (pivots) *pivots = total;
  };
  std::vector<std::size_t> previous;  // full ids, artificials as n + row
  for (;;) {
    LinearProgram r = restrict_to(columns);
    for (std::size_t i = 0; i < m; ++i) r.rows[i].rhs = rhs[i];
    const StandardForm<double> sf = to_standard_form<double>(r);
    FloatSimplex s(sf, PricingRule::Devex, opts);
    s.set_iteration_limit(float_limit(r));
    const std::size_t rn = columns.size();
    bool warm = false;
    if (!previous.empty()) {
      std::vector<std::size_t> local;
      for (std::size_t id : previous) {
        if (id >= n) {
          local.push_back(rn + (id - n));
        } else {
          const auto it = std::lower_bound(columns.begin(), columns.end(), id);
          local.push_back(static_cast<std::size_t>(it - columns.begin()));
        }
      }
      s.install_basis(local);
      warm = s.primal_feasible();
    }
    if (!warm && s.phase_one() != FloatSimplex::Outcome::Optimal) {
      total += s.pivots();
      report();
      return std::nullopt;
    }
    s.drive_out_artificials();
    const auto outcome = s.phase_two();
    total += s.pivots();
    if (outcome != FloatSimplex::Outcome::Optimal) {
      report();
      return std::nullopt;
    }

    previous.clear();
    for (std::size_t id : s.basis()) previous.push_back(id < rn ? columns[id] : n + (id - rn));
    std::sort(previous.begin(), previous.end());

    std::vector<double> y = s.duals();
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(rhs[i]) < 0) y[i] = -y[i];
    std::vector<char> present(n, 0);
    for (std::size_t j : columns) present[j] = 1;
    std::vector<std::size_t> entering;
    for (std::size_t j = 0; j < n; ++j) {
      if (present[j]) continue;
      double d = cost[j];
      for (const auto& [i, v] : col[j]) d -= y[i] * v;
      if (d > 1e-9) entering.push_back(j);
    }
    if (entering.empty()) break;
    columns.insert(columns.end(), entering.begin(), entering.end());
    std::sort(columns.begin(), columns.end());
  }
  report();
  return previous;
}

LpSolution solve_max_guided(const LinearProgram& lp,
                            std::optional<std::vector<std::size_t>> hint_basis,
                            const SolveOptions& opts) {
  lp.validate();
  std::size_t float_pivots = 0;
  if (!hint_basis) hint_basis = approximate_basis(lp, opts, &float_pivots);
  if (!hint_basis) {
    LpSolution sol = solve_max(lp, opts);
    sol.float_pivots = float_pivots;
    return sol;
  }
  const StandardForm<Rational> sf = to_standard_form<Rational>(lp);
  ExactSimplex s(sf, PricingRule::Bland, opts);
  s.install_basis(*hint_basis);
  if (!s.primal_feasible() && s.dual_phase() == ExactSimplex::Outcome::Infeasible) {
    LpSolution sol;
    sol.status = Status::Infeasible;
    sol.pivots = s.pivots();
    sol.float_pivots = float_pivots;
    return sol;
  }
  s.drive_out_artificials();
  LpSolution sol = extract(lp, s, s.phase_two());
  sol.float_pivots = float_pivots;
  sol.hint_accepted = sol.pivots == 0;
  return sol;
}

static bool verify_impl(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != Status::Optimal) return false;
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  for (const auto& e : lp.objective)
    if (e.var >= n) return false;

  // Primal: x >= 0, every row exact, objective exact.
  std::vector<Rational> x(n);
  std::size_t prev = 0;
  for (std::size_t t = 0; t < sol.assignment.size(); ++t) {
    const auto& [var, value] = sol.assignment[t];
    if (var >= n || (t > 0 && var <= prev) || sgn(value) < 0) return false;
    x[var] = value;
    prev = var;
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (const auto& e : row.entries) {
      if (e.var >= n) return false;
      lhs += e.coef * x[e.var];
    }
    if (lhs != row.rhs) return false;
  }
  Rational obj = 0;
  for (const auto& e : lp.objective) obj += e.coef * x[e.var];
  if (obj != sol.optimum) return false;

  // Basis: distinct structural columns that carry the whole support.
  std::vector<char> in_basis(n, 0);
  for (std::size_t var : sol.basis) {
    if (var >= n || in_basis[var]) return false;
    in_basis[var] = 1;
  }
  for (const auto& [var, value] : sol.assignment)
    if (!in_basis[var]) return false;

  const StandardForm<Rational> sf = to_standard_form<Rational>(lp);
  std::vector<detail::SparseVec<Rational>> cols;
  cols.reserve(sol.basis.size());
  for (std::size_t var : sol.basis) {
    detail::SparseVec<Rational> col;
    sf.a.for_column(var, [&](int r, const Rational& v) { col.push_back({r, v}); });
    cols.push_back(std::move(col));
  }
  detail::SparseLu<Rational> lu;
  lu.factor(m, cols);
  if (lu.rank() != sol.basis.size()) return false;

  // Duals from the basis: y^T B = c_B. Then c_j - y.A_j <= 0 for all j and
  // y.b equals the optimum.
  std::vector<Rational> cb(sol.basis.size());
  for (std::size_t k = 0; k < sol.basis.size(); ++k) cb[k] = sf.c[sol.basis[k]];
  std::vector<Rational> y;
  lu.btran(cb, y);
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = sf.c[j];
    sf.a.for_column(j, [&](int r, const Rational& v) { d -= y[r] * v; });
    if (sgn(d) > 0) return false;
  }
  Rational dual_obj = 0;
  for (std::size_t i = 0; i < m; ++i) dual_obj += y[i] * sf.b[i];
  return dual_obj == sol.optimum;
}

}  // namespace scl::lp

namespace scl::lp {

namespace {
std::atomic<std::size_t> g_verified{0}, g_rejected{0};
}

bool verify_solution(const LinearProgram& lp, const LpSolution& sol) {
  const bool ok = verify_impl(lp, sol);
  ++(ok ? g_verified : g_rejected);
  return ok;
}

VerificationCounts verification_counts() { return {g_verified.load(), g_rejected.load()}; }

}  // namespace scl::lp
