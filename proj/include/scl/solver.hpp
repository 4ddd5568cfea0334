#pragma once

// scl of chains in free groups, computed as an exact LP over the polygon
// pieces of admissible surfaces in normal form.
//
// An admissible surface of degree 1 decomposes into bands, one per pair of
// boundary letters (p, q) with letter(p) = letter(q)^-1, and polygons whose
// corners sit in the gaps between consecutive letters. Walking around a
// polygon, the band pairing p with q carries the corner in gap (p-1, p) to the
// corner in gap (q, q+1), so polygons are closed walks in the gap graph. With
// B = (total length)/2 bands and P polygons, -chi = B - P and
//
//     scl = (total length)/4 - max(P)/2.
//
// Oracle mode uses simple band cycles as variables. Fast mode cuts polygons
// into bigons and triangles along dummy diagonals that are glued in pairs; a
// piece with d dummy sides then counts 1 - d/2 polygons, which is linear.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scl/lp.hpp"
#include "scl/rational.hpp"
#include "scl/word.hpp"

namespace scl {

enum class Mode { Fast, Oracle };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& text);

// Oracle mode is refused above this many letters.
inline constexpr std::size_t kOracleLetterLimit = 14;

struct Position {
  std::size_t term;
  std::size_t index;  // within the term
  Letter letter;
};

// A band arc for the ordered pair (p, q) of positions with inverse letters.
// It runs from gap (p-1, p) to gap (q, q+1).
struct BandArc {
  std::size_t from_position;
  std::size_t to_position;
  std::size_t tail_gap;
  std::size_t head_gap;
};

// Gaps are indexed by the position that precedes them, so gap g lies between
// position g and its cyclic successor inside the same term.
class GapGraph {
 public:
  explicit GapGraph(const Chain& chain);

  const Chain& chain() const { return chain_; }
  const std::vector<Position>& positions() const { return positions_; }
  std::size_t num_gaps() const { return positions_.size(); }
  std::size_t next(std::size_t p) const;
  std::size_t prev(std::size_t p) const;
  int coefficient(std::size_t p) const { return chain_.terms()[positions_[p].term].coefficient; }

  const std::vector<BandArc>& band_arcs() const { return band_arcs_; }
  // Index of the band arc from tail to head gap, or -1.
  int band_between(std::size_t tail, std::size_t head) const { return band_id_[tail * num_gaps() + head]; }
  // Index of the band arc (p, q) by positions, or -1.
  int band_for_positions(std::size_t p, std::size_t q) const;
  // Dummy arcs join every ordered pair of distinct gaps.
  std::size_t num_dummy_arcs() const { return num_gaps() * (num_gaps() - 1); }

 private:
  Chain chain_;
  std::vector<Position> positions_;
  std::vector<std::size_t> term_start_;
  std::vector<BandArc> band_arcs_;
  std::vector<int> band_id_;
};

// Validates the chain (homologically trivial, nonempty terms) and builds its
// gap graph. Throws Errc::NotHomologicallyTrivial or Errc::TrivialWord.
GapGraph build_gap_graph(const Chain& chain);

struct PieceEdge {
  enum class Kind : std::uint8_t { Band, Dummy };
  Kind kind;
  std::size_t tail;
  std::size_t head;
  int band = -1;  // band arc index for Kind::Band

  friend auto operator<=>(const PieceEdge&, const PieceEdge&) = default;
};

// A closed walk in the gap graph, rotated to start at its least gap.
struct PieceType {
  std::vector<PieceEdge> walk;
  int dummy_count = 0;

  friend auto operator<=>(const PieceType&, const PieceType&) = default;
};

// Fast mode: all closed walks of length 2 or 3 with at least one band arc.
// Oracle mode: all simple cycles of band arcs. Sorted canonically.
std::vector<PieceType> enumerate_pieces(const GapGraph& g, Mode mode);

struct LpLayout {
  std::vector<std::pair<std::size_t, std::size_t>> band_pair_rows;  // (p, q), p < q
  std::vector<std::pair<std::size_t, std::size_t>> dummy_pair_rows;  // (g, g'), g < g'
  std::size_t coverage_row_begin = 0;  // one row per position after this
};

struct AssembledLp {
  lp::LinearProgram program;
  LpLayout layout;
};

AssembledLp assemble_lp(const GapGraph& g, const std::vector<PieceType>& pieces, const Chain& c);

struct SclStats {
  std::size_t variables = 0;
  std::size_t rows = 0;
  std::size_t pivots = 0;
  std::size_t float_pivots = 0;
  double wall_ms = 0.0;
  bool guided = false;
};

struct SclResult {
  Rational value;
  Chain chain;
  Mode mode = Mode::Fast;
  SclStats lp_stats;
};

struct SclOptions {
  Mode mode = Mode::Fast;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Everything produced along the way, kept for surface extraction.
struct SclComputation {
  GapGraph graph;
  std::vector<PieceType> pieces;
  AssembledLp lp;
  lp::LpSolution solution;
  SclResult result;
};

SclComputation compute_scl(const Chain& c, const SclOptions& opts = {});
SclResult scl(const Chain& c, const SclOptions& opts = {});
SclResult scl(const Chain& c, Mode mode);
SclResult scl(const Word& w, Mode mode = Mode::Fast);

}  // namespace scl
