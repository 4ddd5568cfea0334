#pragma once

// Free-group words over the alphabet a..z (generators) and A..Z (inverses).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scl {

inline constexpr int kMaxRank = 26;

class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, bool inverted)
      : code_(static_cast<std::uint8_t>(generator * 2 + (inverted ? 1 : 0))) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = static_cast<std::uint8_t>(code);
    return l;
  }

  constexpr int generator() const { return code_ >> 1; }
  constexpr bool inverted() const { return code_ & 1; }
  // a=0, A=1, b=2, B=3, ...; the order used for canonical rotations.
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1); }
  constexpr int exponent() const { return inverted() ? -1 : 1; }

  char to_char() const {
    return static_cast<char>((inverted() ? 'A' : 'a') + generator());
  }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint8_t code_ = 0;
};

// A freely reduced word. Construction from arbitrary letters reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters);

  static Word from_string(std::string_view text, int rank = kMaxRank);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(int k) const;
  // Highest generator index used, or -1 for the empty word.
  int max_generator() const;

  std::string str() const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Freely reduce a raw letter sequence (stack cancellation).
std::vector<Letter> free_reduce(std::span<const Letter> letters);

// A nonempty cyclically reduced word up to rotation. Stored as its
// lexicographically least rotation, so equality is identity of conjugacy class.
class CyclicWord {
 public:
  // Throws Errc::InvalidArgument if the letters are empty or not cyclically
  // reduced.
  explicit CyclicWord(std::span<const Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Word word() const { return Word(letters_); }
  CyclicWord inverse() const;
  std::string str() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;

 private:
  std::vector<Letter> letters_;
};

bool is_cyclically_reduced(std::span<const Letter> letters);

struct CyclicReduction {
  CyclicWord cyclic;
  Word conjugator;  // conjugator * cyclic * conjugator^-1 == w
};

// Throws Errc::TrivialWord if w is the identity.
CyclicReduction cyclic_reduce(const Word& w);

struct ProperPower {
  CyclicWord root;
  int exponent;
};

std::optional<ProperPower> is_proper_power(const CyclicWord& w);

// Cyclic rotation of a word's letters (no reduction involved).
std::vector<Letter> rotate_letters(std::span<const Letter> letters, std::size_t shift);

struct ChainTerm {
  CyclicWord word;
  int coefficient = 1;

  friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

// A formal positive-integer combination of conjugacy classes.
class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<ChainTerm> terms);
  // A one-term chain from an arbitrary word (cyclically reduced first).
  static Chain from_word(const Word& w);

  const std::vector<ChainTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  // Sum of coefficient * length over all terms.
  long total_length() const;
  // Sum of plain term lengths (one copy of each term).
  std::size_t letter_count() const;
  std::string str() const;

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<ChainTerm> terms_;
};

bool is_homologically_trivial(const Chain& c);
bool is_homologically_trivial(const Word& w);

// Grammar: word := factor+, factor := letter | '[' word ',' word ']' |
// '(' word ')' | factor '^' int. Whitespace is ignored.
Word parse_word(std::string_view text, int rank = kMaxRank);

// Grammar: chain := term ('+' term)*, term := (int '*')? word.
Chain parse_chain(std::string_view text, int rank = kMaxRank);

Word commutator(const Word& u, const Word& v);

struct CommutatorPair {
  Word first;
  Word second;
};

Word product_of_commutators(std::span<const CommutatorPair> pairs);

// Uniform non-backtracking walk: the first letter is uniform over 2*rank
// symbols and each later one over the 2*rank-1 that do not cancel.
Word random_reduced_word(std::size_t n, int rank, std::uint64_t seed);

struct SeifertFamilyWord {
  Word word;
  bool proper_power = false;
};

// prod_i g_i [a,b]^(sign_i * N) g_i^-1 with as many +N's as -N's.
SeifertFamilyWord seifert_family_word(int N, std::span<const int> signs,
                                      std::span<const Word> conjugators);

}  // namespace scl
