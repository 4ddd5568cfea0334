#include "scl/solver.hpp"

#include <algorithm>
#include <map>

#include "scl/error.hpp"

namespace scl {

const char* mode_name(Mode m) { return m == Mode::Fast ? "fast" : "oracle"; }

Mode parse_mode(const std::string& text) {
  if (text == "fast") return Mode::Fast;
  if (text == "oracle") return Mode::Oracle;
  throw Error(Errc::ParseError, "mode must be 'fast' or 'oracle', got '" + text + "'");
}

GapGraph::GapGraph(const Chain& chain) : chain_(chain) {
  for (std::size_t t = 0; t < chain.terms().size(); ++t) {
    term_start_.push_back(positions_.size());
    const auto& letters = chain.terms()[t].word.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) positions_.push_back({t, i, letters[i]});
  }
  term_start_.push_back(positions_.size());

  const std::size_t n = positions_.size();
  band_id_.assign(n * n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (positions_[p].letter != positions_[q].letter.inverse()) continue;
      BandArc arc{p, q, prev(p), q};
      band_id_[arc.tail_gap * n + arc.head_gap] = static_cast<int>(band_arcs_.size());
      band_arcs_.push_back(arc);
    }
  }
}

std::size_t GapGraph::next(std::size_t p) const {
  const std::size_t t = positions_[p].term;
  return p + 1 == term_start_[t + 1] ? term_start_[t] : p + 1;
}

std::size_t GapGraph::prev(std::size_t p) const {
  const std::size_t t = positions_[p].term;
  return p == term_start_[t] ? term_start_[t + 1] - 1 : p - 1;
}

int GapGraph::band_for_positions(std::size_t p, std::size_t q) const {
  if (p >= num_gaps() || q >= num_gaps()) return -1;
  return band_between(prev(p), q);
}

GapGraph build_gap_graph(const Chain& chain) {
  if (chain.terms().empty()) throw Error(Errc::TrivialWord, "empty chain");
  if (!is_homologically_trivial(chain))
    throw Error(Errc::NotHomologicallyTrivial, "chain '" + chain.str() + "' is not homologically trivial");
  return GapGraph(chain);
}

namespace {

PieceEdge band_edge(const GapGraph& g, int id) {
  const BandArc& a = g.band_arcs()[id];
  return {PieceEdge::Kind::Band, a.tail_gap, a.head_gap, id};
}

PieceEdge dummy_edge(std::size_t tail, std::size_t head) {
  return {PieceEdge::Kind::Dummy, tail, head, -1};
}

// Closed walks of length 2 and 3 through distinct gaps with >= 1 band arc.
// Each walk is generated once, starting at its least gap.
std::vector<PieceType> fast_pieces(const GapGraph& g) {
  const std::size_t n = g.num_gaps();
  std::vector<PieceType> out;
  auto options = [&](std::size_t a, std::size_t b) {
    std::vector<PieceEdge> e;
    int id = g.band_between(a, b);
    if (id >= 0) e.push_back(band_edge(g, id));
    e.push_back(dummy_edge(a, b));
    return e;
  };
  for (std::size_t g1 = 0; g1 < n; ++g1) {
    for (std::size_t g2 = g1 + 1; g2 < n; ++g2) {
      for (const auto& e1 : options(g1, g2))
        for (const auto& e2 : options(g2, g1)) {
          int d = (e1.kind == PieceEdge::Kind::Dummy) + (e2.kind == PieceEdge::Kind::Dummy);
          if (d == 2) continue;
          out.push_back({{e1, e2}, d});
        }
    }
  }
  for (std::size_t g1 = 0; g1 < n; ++g1) {
    for (std::size_t g2 = g1 + 1; g2 < n; ++g2) {
      for (std::size_t g3 = g1 + 1; g3 < n; ++g3) {
        if (g3 == g2) continue;
        // Skip the all-dummy case quickly.
        if (g.band_between(g1, g2) < 0 && g.band_between(g2, g3) < 0 && g.band_between(g3, g1) < 0)
          continue;
        for (const auto& e1 : options(g1, g2))
          for (const auto& e2 : options(g2, g3))
            for (const auto& e3 : options(g3, g1)) {
              int d = (e1.kind == PieceEdge::Kind::Dummy) + (e2.kind == PieceEdge::Kind::Dummy) +
                      (e3.kind == PieceEdge::Kind::Dummy);
              if (d == 3) continue;
              out.push_back({{e1, e2, e3}, d});
            }
      }
    }
  }
  return out;
}

// Simple directed cycles of band arcs, each rooted at its least gap.
std::vector<PieceType> oracle_pieces(const GapGraph& g) {
  const std::size_t n = g.num_gaps();
  std::vector<std::vector<int>> out_arcs(n);
  for (std::size_t i = 0; i < g.band_arcs().size(); ++i)
    out_arcs[g.band_arcs()[i].tail_gap].push_back(static_cast<int>(i));

  std::vector<PieceType> out;
  std::vector<char> on_path(n, 0);
  std::vector<PieceEdge> path;
  std::size_t root = 0;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    for (int id : out_arcs[v]) {
      const std::size_t w = g.band_arcs()[id].head_gap;
      if (w == root) {
        path.push_back(band_edge(g, id));
        out.push_back({path, 0});
        path.pop_back();
      } else if (w > root && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(band_edge(g, id));
        self(self, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };
  for (root = 0; root < n; ++root) {
    on_path[root] = 1;
    dfs(dfs, root);
    on_path[root] = 0;
  }
  return out;
}

}  // namespace

std::vector<PieceType> enumerate_pieces(const GapGraph& g, Mode mode) {
  if (mode == Mode::Oracle && g.num_gaps() > kOracleLetterLimit)
    throw Error(Errc::OracleTooLarge, "oracle mode is limited to chains of at most " +
                                          std::to_string(kOracleLetterLimit) + " letters");
  std::vector<PieceType> pieces = mode == Mode::Fast ? fast_pieces(g) : oracle_pieces(g);
  std::sort(pieces.begin(), pieces.end());
  return pieces;
}

AssembledLp assemble_lp(const GapGraph& g, const std::vector<PieceType>& pieces, const Chain& c) {
  AssembledLp out;
  auto& lp = out.program;
  auto& layout = out.layout;
  const std::size_t n = g.num_gaps();
  lp.num_vars = pieces.size();

  // Band rows: one per unordered inverse pair {p, q}.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> band_row;
  for (const auto& arc : g.band_arcs()) {
    if (arc.from_position < arc.to_position) {
      band_row[{arc.from_position, arc.to_position}] = 0;
    }
  }
  for (auto& [key, row] : band_row) {
    row = layout.band_pair_rows.size();
    layout.band_pair_rows.push_back(key);
  }
  // Dummy rows: one per unordered gap pair that some piece uses.
  std::vector<int> dummy_row(n * n, -1);
  for (const auto& piece : pieces)
    for (const auto& e : piece.walk)
      if (e.kind == PieceEdge::Kind::Dummy) {
        auto a = std::min(e.tail, e.head), b = std::max(e.tail, e.head);
        dummy_row[a * n + b] = 0;
      }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (dummy_row[a * n + b] == 0) {
        dummy_row[a * n + b] = static_cast<int>(layout.band_pair_rows.size() + layout.dummy_pair_rows.size());
        layout.dummy_pair_rows.push_back({a, b});
      }
  layout.coverage_row_begin = layout.band_pair_rows.size() + layout.dummy_pair_rows.size();
  lp.rows.resize(layout.coverage_row_begin + n);
  for (std::size_t p = 0; p < n; ++p) {
    const int coefficient = c.terms()[g.positions()[p].term].coefficient;
    lp.rows[layout.coverage_row_begin + p].rhs = coefficient;
  }

  for (std::size_t j = 0; j < pieces.size(); ++j) {
    std::map<std::size_t, long> coef;
    int dummies = 0;
    for (const auto& e : pieces[j].walk) {
      if (e.kind == PieceEdge::Kind::Band) {
        const BandArc& arc = g.band_arcs()[e.band];
        const std::size_t p = arc.from_position, q = arc.to_position;
        const std::size_t row = band_row.at({std::min(p, q), std::max(p, q)});
        coef[row] += p < q ? 1 : -1;
        coef[layout.coverage_row_begin + p] += 1;
      } else {
        ++dummies;
        const std::size_t a = std::min(e.tail, e.head), b = std::max(e.tail, e.head);
        coef[static_cast<std::size_t>(dummy_row[a * n + b])] += e.tail < e.head ? 1 : -1;
      }
    }
    if (dummies != pieces[j].dummy_count)
      throw Error(Errc::InternalInvariantViolation, "piece dummy count is inconsistent");
    for (const auto& [row, v] : coef)
      if (v != 0) lp.rows[row].entries.push_back({j, Rational(v)});
    lp.objective.push_back({j, Rational(2 - dummies, 2)});
  }
  for (auto& e : lp.objective) e.coef.canonicalize();
  return out;
}

namespace {

// Band bigons, and triangles whose middle edge is a band (the first corner
// of a stored walk is its least gap). Fanning a simple band cycle out from
// its least gap cuts it into such pieces with the same objective, so they
// attain the optimum whenever simple cycles do.
bool is_fan_piece(const PieceType& p) {
  if (p.walk.size() == 2) return p.dummy_count == 0;
  return p.walk.size() == 3 && p.walk[1].kind == PieceEdge::Kind::Band;
}

// The float pass runs on the fan columns only; the exact solve and its
// verification run on the full program.
lp::LpSolution solve_guided(const lp::LinearProgram& full, const std::vector<PieceType>& pieces,
                            const lp::SolveOptions& opts) {
  std::vector<std::size_t> columns;
  for (std::size_t j = 0; j < pieces.size(); ++j)
    if (is_fan_piece(pieces[j])) columns.push_back(j);
  std::size_t float_pivots = 0;
  const auto hint = lp::approximate_basis_columns(full, std::move(columns), opts, &float_pivots);
  lp::LpSolution sol = lp::solve_max_guided(full, hint, opts);
  sol.float_pivots += float_pivots;
  return sol;
}

}  // namespace

SclComputation compute_scl(const Chain& c, const SclOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  GapGraph graph = build_gap_graph(c);
  std::vector<PieceType> pieces = enumerate_pieces(graph, opts.mode);
  AssembledLp assembled = assemble_lp(graph, pieces, c);

  lp::SolveOptions lp_opts;
  lp_opts.deadline = opts.deadline;
  // Small programs go straight to the exact solver; large ones take a
  // floating-point pass first and are then re-derived exactly.
  const bool guided = assembled.program.num_vars > 400;
  lp::LpSolution sol = guided ? solve_guided(assembled.program, pieces, lp_opts)
                              : lp::solve_max(assembled.program, lp_opts);
  if (sol.status != lp::Status::Optimal)
    throw Error(Errc::InternalInvariantViolation,
                std::string("scl program is ") + lp::status_name(sol.status) + " for '" + c.str() + "'");
  if (!lp::verify_solution(assembled.program, sol))
    throw Error(Errc::InternalInvariantViolation, "exact LP verification failed for '" + c.str() + "'");

  // Each position is covered by exactly one band end, and each band has two.
  Rational covered = 0, band_count = 0;
  for (std::size_t p = 0; p < graph.num_gaps(); ++p) {
    for (const auto& e : assembled.program.rows[assembled.layout.coverage_row_begin + p].entries)
      covered += e.coef * sol.value_of(e.var);
  }
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    for (const auto& e : pieces[j].walk) {
      if (e.kind != PieceEdge::Kind::Band) continue;
      const BandArc& arc = graph.band_arcs()[e.band];
      if (arc.from_position < arc.to_position) band_count += sol.value_of(j);
    }
  }
  if (covered != 2 * band_count || covered != Rational(c.total_length()))
    throw Error(Errc::InternalInvariantViolation, "band accounting identity failed");

  SclResult result;
  result.chain = c;
  result.mode = opts.mode;
  result.value = Rational(c.total_length(), 4) - sol.optimum / 2;
  result.value.canonicalize();
  if (sgn(result.value) < 0)
    throw Error(Errc::InternalInvariantViolation, "negative scl for '" + c.str() + "'");
  if (c.terms().size() == 1 && result.value < Rational(c.terms()[0].coefficient, 2))
    throw Error(Errc::InternalInvariantViolation, "scl below 1/2 for the single word '" + c.str() + "'");
  result.lp_stats.variables = assembled.program.num_vars;
  result.lp_stats.rows = assembled.program.rows.size();
  result.lp_stats.pivots = sol.pivots;
  result.lp_stats.float_pivots = sol.float_pivots;
  result.lp_stats.guided = guided;
  result.lp_stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return SclComputation{std::move(graph), std::move(pieces), std::move(assembled), std::move(sol),
                        std::move(result)};
}

SclResult scl(const Chain& c, const SclOptions& opts) { return compute_scl(c, opts).result; }

SclResult scl(const Chain& c, Mode mode) {
  SclOptions opts;
  opts.mode = mode;
  return scl(c, opts);
}

SclResult scl(const Word& w, Mode mode) { return scl(Chain::from_word(w), mode); }

}  // namespace scl
