#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "scl/error.hpp"
#include "scl/word.hpp"

using namespace scl;

namespace {

Word W(const char* s) { return parse_word(s); }

std::vector<Letter> letters_of(const std::string& s) {
  std::vector<Letter> out;
  for (char ch : s) out.push_back(ch >= 'a' ? Letter(ch - 'a', false) : Letter(ch - 'A', true));
  return out;
}

// Raw letter strings of length n over rank r, reduced or not.
void all_strings(std::size_t n, int rank, std::string& cur, std::vector<std::string>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (int g = 0; g < rank; ++g)
    for (char base : {'a', 'A'}) {
      cur.push_back(static_cast<char>(base + g));
      all_strings(n, rank, cur, out);
      cur.pop_back();
    }
}

// Smallest period d of the letters with d | n, by direct comparison.
std::optional<std::size_t> brute_period(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = w[i] == w[(i + d) % n];
    if (same) return d;
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("word_core") {
  TEST_CASE("parse_word examples") {
    CHECK(parse_word("abAB", 2).str() == "abAB");
    CHECK(parse_word("[a,b]", 2).str() == "abAB");
    const Word w = parse_word("abBc", 3);
    CHECK(w.str() == "ac");
    CHECK(w.size() == 2);
    CHECK(W("(ab)^3").str() == "ababab");
    CHECK(W(" [ a , b ] ").str() == "abAB");
    CHECK(W("[a,b]^2").str() == "abABabAB");
    CHECK(W("[[a,b],c]").str() == "abABcbaBAC");
  }

  TEST_CASE("parse_word errors") {
    for (const char* bad : {"", "a1", "[a,b", "(ab", "ab)", "a^0", "a^-2", "a^", "[a]", "é"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_word(bad), Error);
    }
    try {
      parse_word("c", 2);
      FAIL("rank not enforced");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseError);
    }
  }

  TEST_CASE("parse_chain") {
    const Chain c = parse_chain("a + A");
    CHECK(c.size() == 2);
    CHECK(is_homologically_trivial(c));
    const Chain d = parse_chain("2*abAB + [a,b]");
    CHECK(d.terms()[0].coefficient == 2);
    CHECK(d.total_length() == 12);
    CHECK_THROWS_AS(parse_chain("0*ab"), Error);
    CHECK_THROWS_AS(parse_chain("ab +"), Error);
  }

  TEST_CASE("cyclic_reduce examples") {
    auto r = cyclic_reduce(W("cabC"));
    CHECK(r.cyclic == CyclicWord(W("ab").letters()));
    CHECK(r.conjugator.str() == "c");

    auto r2 = cyclic_reduce(W("[a,b][c,aa]"));
    CHECK(W("[a,b][c,aa]").str() == "abABcaaCAA");
    CHECK(r2.cyclic.size() == 8);
    CHECK(r2.cyclic == CyclicWord(W("bABcaaCA").letters()));
    CHECK(r2.conjugator * r2.cyclic.word() * r2.conjugator.inverse() == W("[a,b][c,aa]"));

    auto r3 = cyclic_reduce(W("[a,b][c,bcABBcABCbbcACbcBcbb]"));
    CHECK(r3.cyclic.size() == 46);
    CHECK(r3.conjugator.empty());

    CHECK_THROWS_AS(cyclic_reduce(W("abBA")), Error);
  }

  TEST_CASE("homological triviality") {
    CHECK(is_homologically_trivial(W("[a,b][c,aa]")));
    CHECK_FALSE(is_homologically_trivial(W("aab")));
    CHECK(is_homologically_trivial(parse_chain("a + A")));
    CHECK_FALSE(is_homologically_trivial(parse_chain("a + 2*A")));
    CHECK(is_homologically_trivial(parse_chain("2*a + AA")));
  }

  TEST_CASE("commutators") {
    CHECK(commutator(W("a"), W("b")).str() == "abAB");
    CHECK(commutator(W("a"), W("a")).empty());
    std::vector<CommutatorPair> pairs{{W("a"), W("b")}, {W("c"), W("d")}};
    const Word p = product_of_commutators(pairs);
    CHECK(p.str() == "abABcdCD");
    CHECK(p.size() == 8);
  }

  TEST_CASE("is_proper_power examples") {
    auto p = is_proper_power(CyclicWord(W("abab").letters()));
    REQUIRE(p);
    CHECK(p->root == CyclicWord(W("ab").letters()));
    CHECK(p->exponent == 2);
    CHECK_FALSE(is_proper_power(CyclicWord(W("abAB").letters())));
    auto q = is_proper_power(CyclicWord(W("aaa").letters()));
    REQUIRE(q);
    CHECK(q->exponent == 3);
    CHECK(q->root.str() == "a");
  }

  TEST_CASE("is_proper_power agrees with brute force, rank 2, length <= 12") {
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 12; ++n) {
      std::vector<std::string> strs;
      std::string cur;
      all_strings(n, 2, cur, strs);
      for (const std::string& s : strs) {
        const auto letters = letters_of(s);
        if (!is_cyclically_reduced(letters)) continue;
        const auto period = brute_period(letters);
        const auto got = is_proper_power(CyclicWord(letters));
        REQUIRE(got.has_value() == period.has_value());
        if (period) {
          CHECK(static_cast<std::size_t>(got->exponent) == n / *period);
          CHECK(got->root.size() == *period);
        }
        ++checked;
      }
    }
    CHECK(checked > 100000);
  }

  TEST_CASE("random_reduced_word contract") {
    CHECK(random_reduced_word(5, 3, 42) == random_reduced_word(5, 3, 42));
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const Word w = random_reduced_word(20, 3, seed);
      REQUIRE(w.size() == 20);
      CHECK(w.max_generator() <= 2);
      CHECK(Word(w.letters()) == w);  // already reduced
    }
    // First letter uniform over 4 symbols: chi-square with 3 dof, 0.999 quantile 16.27.
    std::map<std::string, int> counts;
    const int trials = 8000;
    for (int s = 0; s < trials; ++s) ++counts[random_reduced_word(1, 2, static_cast<std::uint64_t>(s)).str()];
    CHECK(counts.size() == 4);
    double chi2 = 0;
    for (const auto& [k, c] : counts) chi2 += (c - trials / 4.0) * (c - trials / 4.0) / (trials / 4.0);
    CHECK(chi2 < 16.27);
    // Second letter uniform over the 3 non-cancelling symbols: 2 dof, quantile 13.82.
    std::map<char, int> after_a;
    int total = 0;
    for (int s = 0; s < 40000 && total < 6000; ++s) {
      const Word w = random_reduced_word(2, 2, static_cast<std::uint64_t>(s) + 100000);
      if (w[0] != Letter(0, false)) continue;
      ++after_a[w[1].to_char()];
      ++total;
    }
    CHECK(after_a.count('A') == 0);
    double chi2b = 0;
    for (const auto& [k, c] : after_a) chi2b += (c - total / 3.0) * (c - total / 3.0) / (total / 3.0);
    CHECK(chi2b < 13.82);
  }

  TEST_CASE("seifert_family_word") {
    std::vector<int> signs{1, -1};
    std::vector<Word> conj{Word(), W("a")};
    const auto s = seifert_family_word(2, signs, conj);
    const Word ab = commutator(W("a"), W("b"));
    CHECK(s.word == ab.power(2) * W("a") * ab.power(-2) * W("A"));
    CHECK(is_homologically_trivial(s.word));
    CHECK_FALSE(s.proper_power);

    std::vector<int> bad{1, 1};
    try {
      seifert_family_word(2, bad, conj);
      FAIL("expected UnbalancedSigns");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnbalancedSigns);
    }
    std::vector<Word> one{Word()};
    try {
      seifert_family_word(2, signs, one);
      FAIL("expected ArityMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ArityMismatch);
    }
  }

  TEST_CASE("property: reduction, printing and rotation") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = 1 + rng() % 16;
      std::vector<Letter> raw;
      for (std::size_t i = 0; i < n; ++i) raw.push_back(Letter::from_code(static_cast<int>(rng() % 6)));
      const auto once = free_reduce(raw);
      CHECK(once.size() <= raw.size());
      CHECK(free_reduce(once) == once);
      const Word w(raw);
      if (!w.empty()) CHECK(parse_word(w.str()) == w);
      if (w.empty()) continue;
      const CyclicWord base = cyclic_reduce(w).cyclic;
      for (std::size_t k = 0; k < w.size(); ++k) {
        const Word rotated(rotate_letters(w.letters(), k));
        if (rotated.empty()) continue;
        CHECK(cyclic_reduce(rotated).cyclic == base);
      }
    }
  }

  TEST_CASE("property: commutator times trivial stays trivial") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      const Word u = random_reduced_word(1 + rng() % 6, 3, rng());
      const Word v = random_reduced_word(1 + rng() % 6, 3, rng());
      const Word x = random_reduced_word(1 + rng() % 6, 3, rng());
      const Word y = random_reduced_word(1 + rng() % 6, 3, rng());
      CHECK(is_homologically_trivial(commutator(u, v) * commutator(x, y)));
      CHECK(is_homologically_trivial(commutator(u, v) * x * commutator(y, u) * x.inverse()));
    }
  }
}
