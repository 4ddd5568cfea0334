#include <doctest.h>

#include "scl/certificate.hpp"
#include "scl/error.hpp"
#include "scl/json.hpp"

using namespace scl;

namespace {

Rational R(long p, long q = 1) { return make_rational(p, q); }

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InternalInvariantViolation;
}

}  // namespace

TEST_SUITE("certificates") {
  TEST_CASE("surface data") {
    CHECK(SurfaceData::connected(3).chi() == -4);
    CHECK(SurfaceData{{2, 3}}.chi() == -6);
    CHECK(code_of([] { SurfaceData::connected(1).validate(); }) == Errc::InvalidSurface);
    CHECK(code_of([] { SurfaceData::connected(0).validate(); }) == Errc::InvalidSurface);
    CHECK(code_of([] { SurfaceData{}.validate(); }) == Errc::InvalidSurface);
  }

  TEST_CASE("check_certificate examples") {
    const auto s3 = SurfaceData::connected(3);
    auto v = check_certificate(R(3), s3);
    CHECK(v.verdict == Verdict::Incompressible);
    CHECK(v.chi == -4);
    CHECK(v.min_cover_index == CoverIndex{2});
    CHECK_FALSE(v.norm_in_two_z);
    CHECK(check_certificate(R(2), s3).verdict == Verdict::Inconclusive);
    CHECK(check_certificate(R(2), s3).norm_in_two_z);
    CHECK(check_certificate(R(4), s3).verdict == Verdict::NormMinimizingInjective);
    CHECK(check_certificate(R(4), s3).min_cover_index.infinite());
    CHECK(code_of([&] { check_certificate(R(9, 2), s3); }) == Errc::InvalidInput);
    CHECK(code_of([] { check_certificate(R(3), SurfaceData::connected(1)); }) == Errc::InvalidSurface);
  }

  TEST_CASE("min_cover_index examples") {
    CHECK(min_cover_index(R(3), -4) == CoverIndex{2});
    CHECK(min_cover_index(R(19, 5), -4) == CoverIndex{10});
    CHECK(min_cover_index(R(4), -4).infinite());
    CHECK(min_cover_index(R(4), -4).str() == "infinity");
    CHECK(code_of([] { min_cover_index(R(5), -4); }) == Errc::InvalidInput);
  }

  TEST_CASE("property: verdict trichotomy on a rational grid") {
    for (int chi = -8; chi <= -2; chi += 2) {
      std::optional<long> prev_index = 0;
      for (int num = 0; num <= -chi * 12; ++num) {
        const Rational norm = R(num, 12);
        const auto v = check_certificate(norm, SurfaceData::connected(1 - chi / 2));
        const Rational mc(-chi);
        const int hits = (norm == mc) + (norm > mc - 2 && norm < mc) + (norm <= mc - 2);
        CHECK(hits == 1);
        if (norm == mc) CHECK(v.verdict == Verdict::NormMinimizingInjective);
        else if (norm > mc - 2) CHECK(v.verdict == Verdict::Incompressible);
        else CHECK(v.verdict == Verdict::Inconclusive);
        // Non-decreasing in norm, infinite at the end.
        const auto& idx = v.min_cover_index.value;
        if (prev_index && idx) CHECK(*idx >= *prev_index);
        if (!prev_index) CHECK_FALSE(idx);
        prev_index = idx;
        // m * (-chi - norm) >= 2 and (m - 1) * (-chi - norm) < 2
        if (idx && *idx > 1) {
          CHECK(Rational(*idx) * (mc - norm) >= 2);
          CHECK(Rational(*idx - 1) * (mc - norm) < 2);
        }
      }
      CHECK_FALSE(prev_index);
    }
  }

  TEST_CASE("amalgam_norm") {
    AmalgamSpec spec{{FreeGroupFactor{3}, parse_word("[a,b][c,aa]"), "F(a,b,c)"},
                     {FreeGroupFactor{2}, parse_word("[a,b]"), "F(x,y)"}};
    CHECK(amalgam_norm(spec) == 3);
    AmalgamSpec half{{ExternalFactor{"J", R(1, 2), "test"}, parse_word("[a,b]"), "J"},
                     {ExternalFactor{"K", R(1, 2), "test"}, parse_word("[a,b]"), "K"}};
    CHECK(amalgam_norm(half) == 2);
    AmalgamSpec missing{{ExternalFactor{"J", std::nullopt, "test"}, parse_word("[a,b]"), "J"},
                        {FreeGroupFactor{2}, parse_word("[a,b]"), "F"}};
    CHECK(code_of([&] { amalgam_norm(missing); }) == Errc::MissingExternalScl);
    AmalgamSpec hom{{FreeGroupFactor{2}, parse_word("aab"), "F"}, {FreeGroupFactor{2}, parse_word("[a,b]"), "F"}};
    CHECK(code_of([&] { amalgam_norm(hom); }) == Errc::NotHomologicallyTrivial);
  }

  TEST_CASE("example 1") {
    const auto v = build_example1(parse_word("aa"));
    CHECK(v.scl_left == 1);
    CHECK(v.scl_right == R(1, 2));
    CHECK(v.norm_lower_bound == 3);
    CHECK(v.chi == -4);
    CHECK(v.verdict == Verdict::Incompressible);
    CHECK(v.min_cover_index == CoverIndex{2});
    CHECK_FALSE(v.conditional);
    CHECK(v.external_inputs.empty());
    CHECK(v.solver.solves == 2);
    CHECK(code_of([] { build_example1(parse_word("c")); }) == Errc::DegenerateFamily);
    CHECK(code_of([] { build_example1(parse_word("ccC")); }) == Errc::DegenerateFamily);
  }

  TEST_CASE("example 2") {
    const auto one = build_example1(parse_word("aa"));
    const auto two = build_example2(parse_word("aa"), 1);
    CHECK(two.norm_lower_bound == one.norm_lower_bound);
    CHECK(two.verdict == one.verdict);
    CHECK(two.chi == one.chi);
    CHECK(two.min_cover_index == one.min_cover_index);
    const auto g2 = build_example2(parse_word("aa"), 2);
    CHECK(g2.scl_right == R(3, 2));
    CHECK(g2.norm_lower_bound == 5);
    CHECK(g2.chi == -6);
    CHECK(g2.verdict == Verdict::Incompressible);
    CHECK(code_of([] { build_example2(parse_word("c"), 3); }) == Errc::DegenerateFamily);
  }

  TEST_CASE("example 3") {
    const auto zero = build_example3(R(0), "hypothetical");
    CHECK(zero.norm_lower_bound == 1);
    CHECK(zero.chi == -2);
    CHECK(zero.verdict == Verdict::Incompressible);
    CHECK(zero.conditional);
    CHECK_FALSE(zero.norm_is_exact);
    REQUIRE(zero.external_inputs.size() == 1);
    CHECK(zero.external_inputs[0].provenance == "hypothetical");
    const auto half = build_example3(R(1, 2), "x");
    CHECK(half.norm_lower_bound == 2);
    CHECK(half.verdict == Verdict::NormMinimizingInjective);
    const auto quarter = build_example3(R(1, 4), "x");
    CHECK(quarter.norm_lower_bound == R(3, 2));
    CHECK(quarter.verdict == Verdict::Incompressible);
    CHECK_FALSE(quarter.norm_in_two_z);
    CHECK(code_of([] { build_example3(R(-1, 4), "x"); }) == Errc::NegativeScl);
  }

  TEST_CASE("example 4") {
    std::vector<int> signs{1, -1};
    std::vector<Word> conj{Word(), parse_word("a")};
    const auto r3 = build_example4(3, signs, conj);
    CHECK(r3.reference_scl == R(1, 3));
    CHECK(r3.free_upper_bound == R(1, 2));
    CHECK_FALSE(r3.proper_power);
    CHECK(r3.warnings.empty());
    CHECK(build_example4(10, signs, conj).reference_scl == R(9, 20));
    std::vector<int> bad{1, 1};
    CHECK(code_of([&] { build_example4(3, bad, conj); }) == Errc::UnbalancedSigns);
    // Equal conjugators cancel completely.
    std::vector<Word> same{Word(), Word()};
    CHECK_FALSE(build_example4(3, signs, same).warnings.empty());
  }

  TEST_CASE("json schema") {
    const auto j = to_json(build_example1(parse_word("aa")));
    for (const char* key : {"family", "word", "scl_left", "scl_right", "norm", "norm_is_exact", "chi", "verdict",
                            "norm_in_2Z", "min_cover_index", "solver", "external_inputs"})
      CHECK(j.contains(key));
    CHECK(j["norm"] == "3");
    CHECK(j["verdict"] == "incompressible");
    CHECK(j["min_cover_index"] == 2);
    CHECK(j["solver"].contains("wall_ms"));
    const auto k = to_json(build_example3(R(1, 2), "p"));
    CHECK(k["min_cover_index"] == "infinity");
    CHECK(k["external_inputs"][0]["value"] == "1/2");
    CHECK(k["verdict"] == "norm_minimizing_injective");
  }
}
