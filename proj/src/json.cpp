#include "scl/json.hpp"

namespace scl {

using nlohmann::ordered_json;

namespace {

ordered_json side_json(const SideRef& s) { return {{"piece", s.piece}, {"copy", s.copy}, {"side", s.side}}; }

ordered_json chain_terms_json(const Chain& c) {
  ordered_json terms = ordered_json::array();
  for (const ChainTerm& t : c.terms()) terms.push_back({{"word", t.word.str()}, {"coefficient", t.coefficient}});
  return terms;
}

ordered_json optional_rational(const std::optional<Rational>& r) {
  return r ? ordered_json(to_string(*r)) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const SclResult& r) {
  return {{"chain", r.chain.str()},
          {"terms", chain_terms_json(r.chain)},
          {"scl", to_string(r.value)},
          {"mode", mode_name(r.mode)},
          {"lp",
           {{"variables", r.lp_stats.variables},
            {"rows", r.lp_stats.rows},
            {"pivots", r.lp_stats.pivots},
            {"float_pivots", r.lp_stats.float_pivots},
            {"guided", r.lp_stats.guided},
            {"wall_ms", r.lp_stats.wall_ms}}}};
}

ordered_json to_json(const ExtremalSurface& s) {
  ordered_json pieces = ordered_json::array();
  for (const SurfacePiece& p : s.pieces) {
    ordered_json walk = ordered_json::array();
    for (const PieceEdge& e : p.piece.walk) {
      ordered_json edge = {{"kind", e.kind == PieceEdge::Kind::Band ? "band" : "dummy"},
                           {"tail_gap", e.tail},
                           {"head_gap", e.head}};
      if (e.kind == PieceEdge::Kind::Band) edge["band_arc"] = e.band;
      walk.push_back(std::move(edge));
    }
    pieces.push_back({{"type", p.type}, {"multiplicity", p.multiplicity}, {"dummy_sides", p.piece.dummy_count},
                      {"walk", std::move(walk)}});
  }
  ordered_json bands = ordered_json::array();
  for (const SurfaceBand& b : s.bands) bands.push_back({{"p", b.p}, {"q", b.q}, {"multiplicity", b.multiplicity}});
  ordered_json band_gluings = ordered_json::array();
  for (const BandGluing& g : s.band_gluings)
    band_gluings.push_back(
        {{"band", g.band}, {"copy", g.copy}, {"forward", side_json(g.forward)}, {"backward", side_json(g.backward)}});
  ordered_json dummy_gluings = ordered_json::array();
  for (const DummyGluing& g : s.dummy_gluings)
    dummy_gluings.push_back({{"first", side_json(g.first)}, {"second", side_json(g.second)}});
  ordered_json boundary = ordered_json::array();
  for (const BoundaryComponent& b : s.boundary)
    boundary.push_back({{"term", b.term},
                        {"word", s.chain.terms()[b.term].word.str()},
                        {"power", b.power},
                        {"component", b.component}});
  ordered_json components = ordered_json::array();
  for (const SurfaceComponent& c : s.components)
    components.push_back({{"euler_characteristic", c.euler_characteristic},
                          {"genus", c.genus},
                          {"boundary_components", c.boundary_components}});

  return {{"chain", s.chain.str()},
          {"terms", chain_terms_json(s.chain)},
          {"mode", mode_name(s.mode)},
          {"scl", to_string(s.scl)},
          {"degree", s.degree},
          {"euler_characteristic", s.euler_characteristic},
          {"euler_characteristic_pieces", s.euler_characteristic_pieces},
          {"normalized_complexity", to_string(s.normalized_complexity())},
          {"vertices", s.vertices},
          {"edges", s.edges},
          {"faces", s.faces},
          {"boundary_component_count", s.boundary_component_count()},
          {"components", std::move(components)},
          {"boundary", std::move(boundary)},
          {"pieces", std::move(pieces)},
          {"bands", std::move(bands)},
          {"band_gluings", std::move(band_gluings)},
          {"dummy_gluings", std::move(dummy_gluings)}};
}

ordered_json to_json(const CertificateVerdict& v) {
  ordered_json inputs = ordered_json::array();
  for (const ExternalInput& e : v.external_inputs)
    inputs.push_back({{"name", e.name}, {"value", to_string(e.value)}, {"provenance", e.provenance}});
  ordered_json cover = v.min_cover_index.value ? ordered_json(*v.min_cover_index.value) : ordered_json("infinity");
  return {{"family", v.family},
          {"word", v.word},
          {"scl_left", to_string(v.scl_left)},
          {"scl_right", to_string(v.scl_right)},
          {"norm", to_string(v.norm_lower_bound)},
          {"norm_is_exact", v.norm_is_exact},
          {"chi", v.chi},
          {"verdict", verdict_name(v.verdict)},
          {"norm_in_2Z", v.norm_in_two_z},
          {"min_cover_index", std::move(cover)},
          {"min_cover_index_label", "derived"},
          {"solver",
           {{"mode", mode_name(v.solver.mode)},
            {"variables", v.solver.variables},
            {"rows", v.solver.rows},
            {"wall_ms", v.solver.wall_ms}}},
          {"external_inputs", std::move(inputs)},
          {"conditional", v.conditional}};
}

ordered_json to_json(const Example4Report& r) {
  ordered_json signs = ordered_json::array();
  for (int s : r.signs) signs.push_back(s > 0 ? "+" : "-");
  ordered_json conjugators = ordered_json::array();
  for (const Word& g : r.conjugators) conjugators.push_back(g.str());
  return {{"family", "example4"},
          {"N", r.n},
          {"signs", std::move(signs)},
          {"conjugators", std::move(conjugators)},
          {"relator", r.relator.str()},
          {"proper_power", r.proper_power},
          {"warnings", r.warnings},
          {"reference_scl", {{"value", to_string(r.reference_scl)}, {"formula", "(N-1)/(2N)"}, {"provenance", "external"}}},
          {"free_upper_bound",
           {{"word", "[a,b]"}, {"value", to_string(r.free_upper_bound)}, {"provenance", "solved in F(a,b)"}}},
          {"target_interval", {to_string(r.reference_scl), to_string(r.free_upper_bound)}},
          {"verdict", nullptr},
          {"solver",
           {{"mode", mode_name(r.solver.mode)},
            {"variables", r.solver.variables},
            {"rows", r.solver.rows},
            {"wall_ms", r.solver.wall_ms}}}};
}

ordered_json to_json(const ScanConfig& cfg) {
  return {{"lengths", cfg.lengths},
          {"samples_per_length", cfg.samples_per_length},
          {"seed", cfg.seed},
          {"rank", cfg.rank},
          {"mode", mode_name(cfg.mode)},
          {"timeout_seconds", cfg.timeout_seconds},
          {"family", "[a,b][c,v]"},
          {"sampler", "uniform non-backtracking reduced word of length n"},
          {"defaults_note", "sample sizes and lengths are calibration choices"}};
}

ordered_json to_json(std::span<const LengthSummary> summary) {
  ordered_json out = ordered_json::array();
  for (const LengthSummary& s : summary)
    out.push_back({{"n", s.n},
                   {"samples", s.samples},
                   {"timeouts", s.timeouts},
                   {"min", optional_rational(s.min)},
                   {"max", optional_rational(s.max)},
                   {"mean", optional_rational(s.mean)},
                   {"median", optional_rational(s.median)}});
  return out;
}

}  // namespace scl
