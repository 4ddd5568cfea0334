#include <doctest.h>

#include <set>

#include "scl/error.hpp"
#include "scl/experiment.hpp"
#include "scl/json.hpp"

using namespace scl;

namespace {

ScanRecord ok_record(std::size_t n, std::size_t i, Rational v) {
  ScanRecord r;
  r.n = n;
  r.sample_index = i;
  r.scl = v;
  r.status = SampleStatus::Ok;
  return r;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("config validation") {
    ScanConfig cfg;
    cfg.lengths = {4, 8};
    CHECK_NOTHROW(cfg.validate());
    cfg.samples_per_length = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.samples_per_length = 1;
    cfg.lengths = {8, 4};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.lengths = {4, 4};
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.lengths = {};
    CHECK_THROWS_AS(cfg.validate(), Error);
  }

  TEST_CASE("derive_seed") {
    CHECK(derive_seed(42, 4, 0) == derive_seed(42, 4, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t n = 1; n < 30; ++n)
      for (std::uint64_t i = 0; i < 30; ++i) seen.insert(derive_seed(42, n, i));
    CHECK(seen.size() == 29 * 30);
    CHECK(derive_seed(1, 4, 0) != derive_seed(2, 4, 0));
  }

  TEST_CASE("injected sample v = aa") {
    ScanConfig cfg;
    cfg.lengths = {2};
    const ScanRecord r = evaluate_sample(parse_word("aa"), 2, 0, cfg);
    CHECK(r.status == SampleStatus::Ok);
    CHECK(r.scl == 1);
    CHECK(family_word(parse_word("aa")) == parse_word("[a,b][c,aa]"));
  }

  TEST_CASE("timeout is recorded") {
    ScanConfig cfg;
    cfg.lengths = {20};
    cfg.timeout_seconds = 1e-9;
    const ScanRecord r = evaluate_sample(parse_word("bcABBcABCbbcACbcBcbb"), 20, 0, cfg);
    CHECK(r.status == SampleStatus::Timeout);
  }

  TEST_CASE("run_scan is deterministic and independent of worker count") {
    ScanConfig cfg;
    cfg.lengths = {3, 6};
    cfg.samples_per_length = 6;
    cfg.seed = 42;
    cfg.workers = 1;
    const auto a = run_scan(cfg);
    cfg.workers = 4;
    const auto b = run_scan(cfg);
    CHECK(to_csv(a) == to_csv(b));
    REQUIRE(a.size() == 12);
    for (const auto& r : a) {
      CHECK(r.status == SampleStatus::Ok);
      CHECK(r.scl >= make_rational(1, 2));
      CHECK(r.scl <= make_rational(3, 2));
      CHECK(r.v.size() == r.n);
      CHECK(r.v == random_reduced_word(r.n, 3, derive_seed(42, r.n, r.sample_index)));
      CHECK_FALSE(r.wall_ms.has_value());
    }
    CHECK(to_csv(a).rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  }

  TEST_CASE("summarize") {
    CHECK_THROWS_AS(summarize({}), Error);
    std::vector<ScanRecord> one{ok_record(4, 0, 1)};
    const auto s1 = summarize(one);
    REQUIRE(s1.size() == 1);
    CHECK(*s1[0].min == 1);
    CHECK(*s1[0].max == 1);
    CHECK(*s1[0].mean == 1);
    CHECK(*s1[0].median == 1);

    std::vector<ScanRecord> two{ok_record(4, 0, make_rational(1, 2)), ok_record(4, 1, make_rational(3, 2))};
    const auto s2 = summarize(two);
    CHECK(*s2[0].mean == 1);
    CHECK(*s2[0].median == 1);

    auto mixed = two;
    ScanRecord t;
    t.n = 4;
    t.sample_index = 2;
    t.status = SampleStatus::Timeout;
    mixed.push_back(t);
    mixed.push_back(ok_record(8, 0, make_rational(7, 6)));
    const auto s3 = summarize(mixed);
    REQUIRE(s3.size() == 2);
    CHECK(s3[0].samples == 3);
    CHECK(s3[0].timeouts == 1);
    CHECK(*s3[0].mean == 1);
    CHECK(s3[1].n == 8);
    CHECK(*s3[1].median == make_rational(7, 6));

    std::vector<ScanRecord> all_timeout{t};
    CHECK_FALSE(summarize(all_timeout)[0].mean.has_value());
  }

  TEST_CASE("trend warnings") {
    std::vector<ScanRecord> recs{ok_record(4, 0, make_rational(5, 4)), ok_record(8, 0, make_rational(9, 8))};
    const auto s = summarize(recs);
    const auto w = trend_warnings(s);
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("decreases") != std::string::npos);
    const auto j = to_json(std::span<const LengthSummary>(s));
    CHECK(j[0]["mean"] == "5/4");
  }

  TEST_CASE("csv rendering") {
    std::vector<ScanRecord> recs{ok_record(2, 0, 1)};
    recs[0].v = parse_word("aa");
    ScanRecord t;
    t.n = 2;
    t.sample_index = 1;
    t.v = parse_word("ab");
    t.status = SampleStatus::Timeout;
    recs.push_back(t);
    CHECK(to_csv(recs) == "n,sample_index,v,scl_num,scl_den,wall_ms,status\n2,0,aa,1,1,,ok\n2,1,ab,,,,timeout\n");
  }
}
