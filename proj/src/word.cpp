#include "scl/word.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <numeric>
#include <random>

#include "scl/error.hpp"

namespace scl {

std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word::Word(std::span<const Letter> letters) : letters_(free_reduce(letters)) {}

Word Word::from_string(std::string_view text, int rank) { return parse_word(text, rank); }

Word Word::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l = l.inverse();
  Word w;
  w.letters_ = std::move(inv);
  return w;
}

Word Word::power(int k) const {
  if (k < 0) return inverse().power(-k);
  Word result;
  for (int i = 0; i < k; ++i) result = result * *this;
  return result;
}

int Word::max_generator() const {
  int m = -1;
  for (Letter l : letters_) m = std::max(m, l.generator());
  return m;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(l.to_char());
  return s;
}

Word operator*(const Word& u, const Word& v) {
  std::vector<Letter> joined = u.letters_;
  joined.insert(joined.end(), v.letters_.begin(), v.letters_.end());
  return Word(joined);
}

bool is_cyclically_reduced(std::span<const Letter> letters) {
  const std::size_t n = letters.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (letters[i] == letters[(i + 1) % n].inverse()) return false;
  }
  return true;
}

std::vector<Letter> rotate_letters(std::span<const Letter> letters, std::size_t shift) {
  std::vector<Letter> out(letters.begin(), letters.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + shift % out.size(), out.end());
  return out;
}

namespace {

std::vector<Letter> least_rotation(std::span<const Letter> letters) {
  const std::size_t n = letters.size();
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter x = letters[(s + k) % n];
      Letter y = letters[(best + k) % n];
      if (x == y) continue;
      if (x < y) best = s;
      break;
    }
  }
  return rotate_letters(letters, best);
}

}  // namespace

CyclicWord::CyclicWord(std::span<const Letter> letters) {
  if (letters.empty()) throw Error(Errc::InvalidArgument, "cyclic word must be nonempty");
  if (!is_cyclically_reduced(letters))
    throw Error(Errc::InvalidArgument, "cyclic word must be cyclically reduced");
  letters_ = least_rotation(letters);
}

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l = l.inverse();
  return CyclicWord(inv);
}

std::string CyclicWord::str() const { return Word(letters_).str(); }

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& letters = w.letters();
  if (letters.empty()) throw Error(Errc::TrivialWord, "word reduces to the identity");
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(letters.begin() + static_cast<long>(lo),
                           letters.begin() + static_cast<long>(hi));
  std::vector<Letter> conj(letters.begin(), letters.begin() + static_cast<long>(lo));
  // The core is a rotation of the returned canonical cyclic word; fold the
  // rotation into the conjugator so that conj * cyclic * conj^-1 == w.
  CyclicWord cyclic(core);
  std::size_t shift = 0;
  for (std::size_t s = 0; s < core.size(); ++s) {
    if (rotate_letters(core, s) == cyclic.letters()) {
      shift = s;
      break;
    }
  }
  // core = p q, canonical = q p, so core = p (q p) p^-1.
  conj.insert(conj.end(), core.begin(), core.begin() + static_cast<long>(shift));
  return {std::move(cyclic), Word(conj)};
}

std::optional<ProperPower> is_proper_power(const CyclicWord& w) {
  const auto& letters = w.letters();
  const std::size_t n = letters.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = letters[i] == letters[i - d];
    if (periodic) {
      std::vector<Letter> root(letters.begin(), letters.begin() + static_cast<long>(d));
      return ProperPower{CyclicWord(root), static_cast<int>(n / d)};
    }
  }
  return std::nullopt;
}

Chain::Chain(std::vector<ChainTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.coefficient <= 0)
      throw Error(Errc::InvalidArgument, "chain coefficients must be positive");
  }
}

Chain Chain::from_word(const Word& w) { return Chain({ChainTerm{cyclic_reduce(w).cyclic, 1}}); }

long Chain::total_length() const {
  long total = 0;
  for (const auto& t : terms_) total += static_cast<long>(t.word.size()) * t.coefficient;
  return total;
}

std::size_t Chain::letter_count() const {
  std::size_t total = 0;
  for (const auto& t : terms_) total += t.word.size();
  return total;
}

std::string Chain::str() const {
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    if (terms_[i].coefficient != 1) s += std::to_string(terms_[i].coefficient) + "*";
    s += terms_[i].word.str();
  }
  return s;
}

bool is_homologically_trivial(const Chain& c) {
  std::array<long, kMaxRank> exponent{};
  for (const auto& t : c.terms())
    for (Letter l : t.word.letters()) exponent[l.generator()] += l.exponent() * t.coefficient;
  return std::all_of(exponent.begin(), exponent.end(), [](long e) { return e == 0; });
}

bool is_homologically_trivial(const Word& w) {
  std::array<long, kMaxRank> exponent{};
  for (Letter l : w.letters()) exponent[l.generator()] += l.exponent();
  return std::all_of(exponent.begin(), exponent.end(), [](long e) { return e == 0; });
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, int rank) : rank_(rank) {
    if (rank < 1 || rank > kMaxRank)
      throw Error(Errc::InvalidArgument, "rank must be in [1, 26]");
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
  }

  Word parse_whole_word() {
    std::vector<Letter> w = word();
    if (pos_ != text_.size()) fail("unexpected character");
    return Word(w);
  }

  Chain parse_whole_chain() {
    std::vector<ChainTerm> terms;
    do {
      int coefficient = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        coefficient = integer();
        expect('*');
      }
      Word w(word());
      if (w.empty()) throw Error(Errc::TrivialWord, "chain term reduces to the identity");
      terms.push_back({cyclic_reduce(w).cyclic, coefficient});
    } while (accept('+'));
    if (pos_ != text_.size()) fail("unexpected character");
    return Chain(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::ParseError, why + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  int integer() {
    std::size_t start = pos_;
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000) fail("integer too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return static_cast<int>(value);
  }

  bool at_factor_start() const {
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(';
  }

  std::vector<Letter> word() {
    if (!at_factor_start()) fail("expected a letter, '[' or '('");
    std::vector<Letter> out;
    while (at_factor_start()) {
      std::vector<Letter> f = factor();
      out.insert(out.end(), f.begin(), f.end());
    }
    return free_reduce(out);
  }

  std::vector<Letter> factor() {
    std::vector<Letter> base;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      bool inverted = std::isupper(static_cast<unsigned char>(c));
      int gen = std::tolower(static_cast<unsigned char>(c)) - 'a';
      if (gen >= rank_) {
        --pos_;
        fail(std::string("letter '") + c + "' beyond rank " + std::to_string(rank_));
      }
      base.push_back(Letter(gen, inverted));
    } else if (accept('[')) {
      Word u(word());
      expect(',');
      Word v(word());
      expect(']');
      base = commutator(u, v).letters();
    } else {
      expect('(');
      base = word();
      expect(')');
    }
    while (accept('^')) {
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '0'))
        fail("exponent must be a positive integer");
      int k = integer();
      if (k <= 0) fail("exponent must be a positive integer");
      base = Word(base).power(k).letters();
    }
    return base;
  }

  std::string text_;
  std::size_t pos_ = 0;
  int rank_;
};

}  // namespace

Word parse_word(std::string_view text, int rank) { return Parser(text, rank).parse_whole_word(); }

Chain parse_chain(std::string_view text, int rank) {
  return Parser(text, rank).parse_whole_chain();
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

Word product_of_commutators(std::span<const CommutatorPair> pairs) {
  Word w;
  for (const auto& p : pairs) w = w * commutator(p.first, p.second);
  return w;
}

namespace {

// Uniform integer in [0, bound) by rejection on raw 64-bit output, so the
// stream is identical on every standard library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

Word random_reduced_word(std::size_t n, int rank, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::InvalidArgument, "random word length must be >= 1");
  if (rank < 2 || rank > kMaxRank) throw Error(Errc::InvalidArgument, "random word rank must be in [2, 26]");
  std::mt19937_64 rng(seed);
  const int symbols = 2 * rank;
  std::vector<Letter> out;
  out.reserve(n);
  out.push_back(Letter::from_code(static_cast<int>(uniform_below(rng, symbols))));
  while (out.size() < n) {
    // Draw from the 2*rank-1 codes other than the inverse of the last letter.
    const int forbidden = out.back().inverse().code();
    int code = static_cast<int>(uniform_below(rng, symbols - 1));
    if (code >= forbidden) ++code;
    out.push_back(Letter::from_code(code));
  }
  return Word(out);
}

SeifertFamilyWord seifert_family_word(int N, std::span<const int> signs,
                                      std::span<const Word> conjugators) {
  if (signs.size() != conjugators.size())
    throw Error(Errc::ArityMismatch, "signs and conjugators must have the same length");
  if (N < 2) throw Error(Errc::InvalidArgument, "N must be at least 2");
  if (signs.size() < 2) throw Error(Errc::InvalidArgument, "need at least two conjugated factors");
  int total = 0;
  for (int s : signs) {
    if (s != 1 && s != -1) throw Error(Errc::InvalidArgument, "signs must be +1 or -1");
    total += s;
  }
  if (total != 0) throw Error(Errc::UnbalancedSigns, "as many +N's as -N's are required");
  for (const Word& g : conjugators)
    if (g.max_generator() > 1)
      throw Error(Errc::InvalidArgument, "conjugators must be words in a, b");

  const Word ab = commutator(Word(std::vector{Letter(0, false)}), Word(std::vector{Letter(1, false)}));
  Word v;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const Word& g = conjugators[i];
    v = v * g * ab.power(signs[i] * N) * g.inverse();
  }
  SeifertFamilyWord out{v, false};
  if (!v.empty()) out.proper_power = is_proper_power(cyclic_reduce(v).cyclic).has_value();
  return out;
}

}  // namespace scl
