#pragma once

// Exact linear programming: maximize c.x subject to A x = b, x >= 0, with all
// data and results in exact rationals.

#include <chrono>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "scl/rational.hpp"

namespace scl::lp {

struct Entry {
  std::size_t var;
  Rational coef;
};

struct Constraint {
  std::vector<Entry> entries;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Constraint> rows;
  std::vector<Entry> objective;

  // Throws Errc::InvalidArgument when an entry names a variable >= num_vars.
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

const char* status_name(Status s);

struct LpSolution {
  Status status = Status::Infeasible;
  Rational optimum;  // meaningful only when Optimal
  // Nonzero variable values, sorted by variable index.
  std::vector<std::pair<std::size_t, Rational>> assignment;
  // Basic structural variables, sorted. Its size equals the rank of A.
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;          // exact simplex pivots
  std::size_t float_pivots = 0;    // approximate pass, guided mode only
  bool hint_accepted = false;      // guided mode: hinted basis needed no exact pivots

  Rational value_of(std::size_t var) const;
};

struct SolveOptions {
  // Checked once per pivot; Errc::Timeout is thrown when exceeded.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Two-phase revised simplex in exact arithmetic with Bland's rule.
LpSolution solve_max(const LinearProgram& lp, const SolveOptions& opts = {});

// Re-derives duals from the basis and checks primal feasibility, the
// objective value and nonpositive reduced costs, all exactly. No pivoting.
bool verify_solution(const LinearProgram& lp, const LpSolution& sol);

// Process-wide tallies of verify_solution outcomes.
struct VerificationCounts {
  std::size_t passed = 0;
  std::size_t failed = 0;
};
VerificationCounts verification_counts();

// Floating-point simplex; returns the basis it ends on, or nullopt if the
// approximate pass failed to reach an optimal basis. Indices >= num_vars name
// the artificial column of row (index - num_vars).
std::optional<std::vector<std::size_t>> approximate_basis(const LinearProgram& lp,
                                                          const SolveOptions& opts = {},
                                                          std::size_t* pivots = nullptr);

// approximate_basis restricted to `columns`, grown by float pricing until no
// column of lp has positive reduced cost. Returns a basis of lp in the same
// convention as approximate_basis.
std::optional<std::vector<std::size_t>> approximate_basis_columns(const LinearProgram& lp,
                                                                  std::vector<std::size_t> columns,
                                                                  const SolveOptions& opts = {},
                                                                  std::size_t* pivots = nullptr);

// Warm-starts the exact simplex from hint_basis (or from approximate_basis
// when no hint is given). Dependent hint columns are dropped and the rest is
// completed with artificials; a primal infeasible start is repaired with the
// dual simplex. The returned optimum always equals solve_max's.
LpSolution solve_max_guided(const LinearProgram& lp,
                            std::optional<std::vector<std::size_t>> hint_basis = std::nullopt,
                            const SolveOptions& opts = {});

}  // namespace scl::lp
