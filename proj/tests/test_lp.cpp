#include <doctest.h>

#include <random>

#include "lp_oracle.hpp"
#include "scl/error.hpp"
#include "scl/lp.hpp"

using namespace scl;
using namespace scl::lp;

namespace {

LinearProgram make(std::size_t n, std::vector<std::vector<long>> a, std::vector<Rational> b, std::vector<Rational> c) {
  LinearProgram lp;
  lp.num_vars = n;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Constraint row;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != 0) row.entries.push_back({j, Rational(a[i][j])});
    row.rhs = b[i];
    lp.rows.push_back(row);
  }
  for (std::size_t j = 0; j < n; ++j)
    if (c[j] != 0) lp.objective.push_back({j, c[j]});
  return lp;
}

}  // namespace

TEST_SUITE("exact_lp") {
  TEST_CASE("solve_max examples") {
    // max x s.t. x + s = 1
    auto s1 = solve_max(make(2, {{1, 1}}, {1}, {1, 0}));
    REQUIRE(s1.status == Status::Optimal);
    CHECK(s1.optimum == 1);

    // x - s = 1, x + s = 0
    auto s2 = solve_max(make(2, {{1, -1}, {1, 1}}, {1, 0}, {1, 0}));
    CHECK(s2.status == Status::Infeasible);

    // max x + y s.t. 2x + y = 3/2, x + 2y = 3/2
    auto lp3 = make(2, {{2, 1}, {1, 2}}, {make_rational(3, 2), make_rational(3, 2)}, {1, 1});
    auto s3 = solve_max(lp3);
    REQUIRE(s3.status == Status::Optimal);
    CHECK(s3.optimum == 1);
    CHECK(s3.value_of(0) == make_rational(1, 2));
    CHECK(s3.value_of(1) == make_rational(1, 2));
    CHECK(verify_solution(lp3, s3));

    // max x with x - y = 0 is unbounded
    auto s4 = solve_max(make(2, {{1, -1}}, {0}, {1, 0}));
    CHECK(s4.status == Status::Unbounded);
  }

  TEST_CASE("verify_solution") {
    LinearProgram empty;
    auto s = solve_max(empty);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.optimum == 0);
    CHECK(verify_solution(empty, s));

    auto lp = make(2, {{2, 1}, {1, 2}}, {make_rational(3, 2), make_rational(3, 2)}, {1, 1});
    auto sol = solve_max(lp);
    REQUIRE(verify_solution(lp, sol));
    auto bad = sol;
    bad.assignment[0].second += make_rational(1, 1000000);
    CHECK_FALSE(verify_solution(lp, bad));
    auto bad_opt = sol;
    bad_opt.optimum += make_rational(1, 1000000);
    CHECK_FALSE(verify_solution(lp, bad_opt));

    // A feasible but suboptimal vertex is rejected via reduced costs.
    auto lp2 = make(3, {{1, 1, 1}}, {1}, {1, 2, 0});
    LpSolution sub;
    sub.status = Status::Optimal;
    sub.optimum = 1;
    sub.assignment = {{0, Rational(1)}};
    sub.basis = {0};
    CHECK_FALSE(verify_solution(lp2, sub));
    auto best = solve_max(lp2);
    CHECK(best.optimum == 2);
    CHECK(verify_solution(lp2, best));
  }

  TEST_CASE("agreement with vertex enumeration on random LPs") {
    std::mt19937_64 rng(2024);
    int optimal = 0, infeasible = 0;
    for (int t = 0; t < 300; ++t) {
      const LinearProgram lp = testing::random_small_lp(rng);
      const auto expected = testing::enumerate_vertices(lp);
      const auto got = solve_max(lp);
      const auto guided = solve_max_guided(lp);
      CAPTURE(t);
      if (!expected) {
        CHECK(got.status == Status::Infeasible);
        CHECK(guided.status == Status::Infeasible);
        ++infeasible;
        continue;
      }
      REQUIRE(got.status == Status::Optimal);
      CHECK(got.optimum == *expected);
      CHECK(verify_solution(lp, got));
      REQUIRE(guided.status == Status::Optimal);
      CHECK(guided.optimum == *expected);
      CHECK(verify_solution(lp, guided));
      ++optimal;
    }
    CHECK(optimal > 100);
    CHECK(infeasible > 5);
  }

  TEST_CASE("guided hints") {
    std::mt19937_64 rng(99);
    int fewer = 0, compared = 0;
    for (int t = 0; t < 80; ++t) {
      const LinearProgram lp = testing::random_small_lp(rng);
      const auto plain = solve_max(lp);
      if (plain.status != Status::Optimal) continue;
      const auto with_opt = solve_max_guided(lp, plain.basis);
      REQUIRE(with_opt.status == Status::Optimal);
      CHECK(with_opt.optimum == plain.optimum);
      CHECK(verify_solution(lp, with_opt));
      ++compared;
      if (with_opt.pivots <= plain.pivots) ++fewer;
      std::vector<std::size_t> garbage;
      for (std::size_t j = 0; j < lp.num_vars; ++j)
        if (rng() % 2) garbage.push_back(j);
      const auto with_garbage = solve_max_guided(lp, garbage);
      REQUIRE(with_garbage.status == Status::Optimal);
      CHECK(with_garbage.optimum == plain.optimum);
      CHECK(verify_solution(lp, with_garbage));
    }
    CHECK(fewer == compared);
  }

  TEST_CASE("column generation from a subset") {
    std::mt19937_64 rng(17);
    int grown = 0;
    for (int t = 0; t < 150; ++t) {
      const LinearProgram lp = testing::random_small_lp(rng);
      const auto expected = testing::enumerate_vertices(lp);
      if (!expected) continue;
      // All columns is feasible; a random half may not be.
      for (bool half : {false, true}) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < lp.num_vars; ++j)
          if (!half || rng() % 2) cols.push_back(j);
        const auto hint = approximate_basis_columns(lp, cols);
        if (!half) REQUIRE(hint.has_value());
        if (!hint) continue;
        for (std::size_t id : *hint) CHECK(id < lp.num_vars + lp.rows.size());
        const auto sol = solve_max_guided(lp, hint);
        REQUIRE(sol.status == Status::Optimal);
        CHECK(sol.optimum == *expected);
        CHECK(verify_solution(lp, sol));
        if (half && sol.pivots == 0) ++grown;
      }
    }
    CHECK(grown > 0);
    CHECK_THROWS_AS(approximate_basis_columns(make(1, {{1}}, {1}, {1}), {3}), Error);
  }

  TEST_CASE("determinism") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
      const LinearProgram lp = testing::random_small_lp(rng);
      const auto a = solve_max(lp), b = solve_max(lp);
      CHECK(a.status == b.status);
      CHECK(a.basis == b.basis);
      CHECK(a.assignment == b.assignment);
    }
  }

  TEST_CASE("redundant rows") {
    // Row 3 = row 1 + row 2.
    auto lp = make(3, {{1, 1, 0}, {0, 1, 1}, {1, 2, 1}}, {2, 3, 5}, {1, 1, 1});
    auto s = solve_max(lp);
    REQUIRE(s.status == Status::Optimal);
    CHECK(s.optimum == 5);  // x + y + z = 5 - y
    CHECK(verify_solution(lp, s));
    auto g = solve_max_guided(lp);
    CHECK(g.optimum == 5);
  }
}
