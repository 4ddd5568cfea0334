#include "scl/surface.hpp"

#include <map>
#include <numeric>

#include "scl/error.hpp"

namespace scl {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

[[noreturn]] void broken(const std::string& what) {
  throw Error(Errc::InternalInvariantViolation, "extremal surface: " + what);
}

long to_long(const mpz_class& z) {
  if (!z.fits_slong_p()) broken("multiplicity does not fit in a machine integer");
  return z.get_si();
}

using Key = std::pair<std::size_t, std::size_t>;

}  // namespace

Rational ExtremalSurface::normalized_complexity() const {
  Rational r(-euler_characteristic, 2 * degree);
  r.canonicalize();
  return r;
}

ExtremalSurface extremal_surface(const SclComputation& comp) {
  const GapGraph& g = comp.graph;
  const lp::LpSolution& sol = comp.solution;
  const Chain& chain = comp.result.chain;

  ExtremalSurface s;
  s.chain = chain;
  s.mode = comp.result.mode;
  s.scl = comp.result.value;

  mpz_class denom = 1;
  for (const auto& [var, value] : sol.assignment)
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), value.get_den_mpz_t());
  s.degree = to_long(denom);
  for (const auto& [var, value] : sol.assignment) {
    const mpz_class count = value.get_num() * (denom / value.get_den());
    s.pieces.push_back({var, comp.pieces[var], to_long(count)});
  }

  // Faces: piece copies first, then rectangles. Corner k of a piece copy is
  // the tail of side k; rectangle corners are P_start, P_end, Q_start, Q_end.
  std::vector<std::size_t> corner_base(s.pieces.size()), face_base(s.pieces.size());
  std::size_t piece_corners = 0, piece_faces = 0;
  long dummy_sides = 0;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    corner_base[i] = piece_corners;
    face_base[i] = piece_faces;
    const auto len = static_cast<std::size_t>(s.pieces[i].piece.walk.size());
    const auto mult = static_cast<std::size_t>(s.pieces[i].multiplicity);
    piece_corners += len * mult;
    piece_faces += mult;
    dummy_sides += s.pieces[i].multiplicity * s.pieces[i].piece.dummy_count;
  }
  auto side_len = [&](const SideRef& r) { return s.pieces[r.piece].piece.walk.size(); };
  auto tail_corner = [&](const SideRef& r) { return corner_base[r.piece] + r.copy * side_len(r) + r.side; };
  auto head_corner = [&](const SideRef& r) {
    return corner_base[r.piece] + r.copy * side_len(r) + (r.side + 1) % side_len(r);
  };
  auto piece_face = [&](const SideRef& r) { return face_base[r.piece] + r.copy; };

  std::map<Key, std::vector<SideRef>> band_sides;   // by (from, to) position
  std::map<Key, std::vector<SideRef>> dummy_sides_by_gap;  // by (tail, head) gap
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    const auto& walk = s.pieces[i].piece.walk;
    for (long copy = 0; copy < s.pieces[i].multiplicity; ++copy) {
      for (std::size_t k = 0; k < walk.size(); ++k) {
        const SideRef ref{i, static_cast<std::size_t>(copy), k};
        const PieceEdge& e = walk[k];
        if (e.kind == PieceEdge::Kind::Band) {
          const BandArc& arc = g.band_arcs()[e.band];
          band_sides[{arc.from_position, arc.to_position}].push_back(ref);
        } else {
          dummy_sides_by_gap[{e.tail, e.head}].push_back(ref);
        }
      }
    }
  }

  for (const auto& [key, list] : band_sides) {
    const auto reverse = band_sides.find({key.second, key.first});
    if (reverse == band_sides.end() || reverse->second.size() != list.size())
      broken("band ends over arcs p->q and q->p do not match");
    if (key.first < key.second)
      s.bands.push_back({key.first, key.second, static_cast<long>(list.size())});
  }
  long rectangles = 0;
  for (const auto& b : s.bands) rectangles += b.multiplicity;
  if (2 * rectangles != chain.total_length() * s.degree) broken("band count differs from boundary length");
  for (const auto& [key, list] : dummy_sides_by_gap) {
    const auto reverse = dummy_sides_by_gap.find({key.second, key.first});
    if (reverse == dummy_sides_by_gap.end() || reverse->second.size() != list.size())
      broken("dummy sides do not pair up");
  }

  const std::size_t rect_corner_base = piece_corners;
  const std::size_t num_corners = piece_corners + 4 * static_cast<std::size_t>(rectangles);
  const std::size_t num_faces = piece_faces + static_cast<std::size_t>(rectangles);
  DisjointSets corners(num_corners), faces(num_faces);

  std::vector<std::size_t> rect_position;  // 2r -> p, 2r+1 -> q
  std::size_t r = 0;
  for (std::size_t b = 0; b < s.bands.size(); ++b) {
    const SurfaceBand& band = s.bands[b];
    const auto& fwd = band_sides.at({band.p, band.q});
    const auto& bwd = band_sides.at({band.q, band.p});
    for (long copy = 0; copy < band.multiplicity; ++copy, ++r) {
      const SideRef f = fwd[copy], w = bwd[copy];
      s.band_gluings.push_back({b, static_cast<std::size_t>(copy), f, w});
      const std::size_t base = rect_corner_base + 4 * r;
      corners.unite(tail_corner(f), base + 0);  // P_start
      corners.unite(head_corner(f), base + 3);  // Q_end
      corners.unite(tail_corner(w), base + 2);  // Q_start
      corners.unite(head_corner(w), base + 1);  // P_end
      faces.unite(piece_face(f), piece_faces + r);
      faces.unite(piece_face(w), piece_faces + r);
      rect_position.push_back(band.p);
      rect_position.push_back(band.q);
    }
  }
  for (const auto& [key, list] : dummy_sides_by_gap) {
    if (key.first > key.second) continue;
    const auto& other = dummy_sides_by_gap.at({key.second, key.first});
    for (std::size_t k = 0; k < list.size(); ++k) {
      s.dummy_gluings.push_back({list[k], other[k]});
      corners.unite(tail_corner(list[k]), head_corner(other[k]));
      corners.unite(head_corner(list[k]), tail_corner(other[k]));
      faces.unite(piece_face(list[k]), piece_face(other[k]));
    }
  }
  if (2 * static_cast<long>(s.dummy_gluings.size()) != dummy_sides) broken("dummy side count is odd");

  // Face of every corner, for per-component counts.
  std::vector<std::size_t> corner_face(num_corners);
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    const std::size_t len = s.pieces[i].piece.walk.size();
    for (long copy = 0; copy < s.pieces[i].multiplicity; ++copy)
      for (std::size_t k = 0; k < len; ++k)
        corner_face[corner_base[i] + copy * len + k] = face_base[i] + copy;
  }
  for (std::size_t q = 0; q < static_cast<std::size_t>(rectangles); ++q)
    for (std::size_t k = 0; k < 4; ++k) corner_face[rect_corner_base + 4 * q + k] = piece_faces + q;

  // Each vertex on the boundary joins the end of one letter to the start of
  // the next; interior vertices carry no rectangle corner.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> start_edge(num_corners, kNone), end_edge(num_corners, kNone);
  for (std::size_t q = 0; q < static_cast<std::size_t>(rectangles); ++q) {
    const std::size_t base = rect_corner_base + 4 * q;
    const std::pair<std::size_t, std::size_t> ends[2] = {{base + 0, base + 1}, {base + 2, base + 3}};
    for (std::size_t side = 0; side < 2; ++side) {
      const std::size_t edge = 2 * q + side;
      std::size_t& st = start_edge[corners.find(ends[side].first)];
      std::size_t& en = end_edge[corners.find(ends[side].second)];
      if (st != kNone || en != kNone) broken("a vertex meets the boundary more than once");
      st = edge;
      en = edge;
    }
  }

  std::vector<std::size_t> component_of_face(num_faces), component_ids(num_faces, kNone);
  std::size_t num_components = 0;
  for (std::size_t f = 0; f < num_faces; ++f) {
    const std::size_t root = faces.find(f);
    if (component_ids[root] == kNone) component_ids[root] = num_components++;
    component_of_face[f] = component_ids[root];
  }
  std::vector<long> comp_v(num_components, 0), comp_e(num_components, 0), comp_f(num_components, 0);
  for (std::size_t f = 0; f < num_faces; ++f) ++comp_f[component_of_face[f]];
  for (std::size_t c = 0; c < num_corners; ++c) {
    if (corners.find(c) != c) continue;
    ++s.vertices;
    ++comp_v[component_of_face[corner_face[c]]];
    const bool has_start = start_edge[c] != kNone, has_end = end_edge[c] != kNone;
    if (has_start != has_end) broken("boundary does not continue through a vertex");
  }
  for (std::size_t q = 0; q < static_cast<std::size_t>(rectangles); ++q)
    comp_e[component_of_face[piece_faces + q]] += 4;  // two glued ends, two boundary sides
  for (const auto& d : s.dummy_gluings) ++comp_e[component_of_face[piece_face(d.first)]];
  s.edges = 4 * static_cast<std::size_t>(rectangles) + s.dummy_gluings.size();
  s.faces = num_faces;
  s.euler_characteristic = static_cast<long>(s.vertices) - static_cast<long>(s.edges) + static_cast<long>(s.faces);
  s.euler_characteristic_pieces =
      static_cast<long>(piece_faces) - static_cast<long>(s.dummy_gluings.size()) - rectangles;

  // Trace boundary components through the vertices.
  const std::size_t num_edges = 2 * static_cast<std::size_t>(rectangles);
  std::vector<char> seen(num_edges, 0);
  std::vector<std::size_t> comp_b(num_components, 0);
  std::vector<long> degree_by_term(chain.size(), 0);
  for (std::size_t e0 = 0; e0 < num_edges; ++e0) {
    if (seen[e0]) continue;
    std::size_t length = 0, e = e0;
    const std::size_t term = g.positions()[rect_position[e0]].term;
    do {
      seen[e] = 1;
      ++length;
      const std::size_t end_corner = rect_corner_base + 2 * e + 1;
      const std::size_t next = start_edge[corners.find(end_corner)];
      if (next == kNone) broken("boundary stops at a vertex");
      if (rect_position[next] != g.next(rect_position[e])) broken("boundary does not read a chain term");
      e = next;
    } while (e != e0);
    const std::size_t word_len = chain.terms()[term].word.size();
    if (length % word_len != 0) broken("boundary length is not a multiple of its term");
    const std::size_t comp = component_of_face[piece_faces + e0 / 2];
    s.boundary.push_back({term, static_cast<long>(length / word_len), comp});
    degree_by_term[term] += static_cast<long>(length / word_len);
    ++comp_b[comp];
  }
  for (std::size_t t = 0; t < chain.size(); ++t)
    if (degree_by_term[t] != chain.terms()[t].coefficient * s.degree)
      broken("boundary degree differs from the chain coefficient");

  for (std::size_t c = 0; c < num_components; ++c) {
    SurfaceComponent sc;
    sc.euler_characteristic = comp_v[c] - comp_e[c] + comp_f[c];
    sc.boundary_components = comp_b[c];
    if (sc.boundary_components == 0) broken("closed component");
    const long twice_genus = 2 - sc.euler_characteristic - static_cast<long>(sc.boundary_components);
    if (twice_genus < 0 || twice_genus % 2 != 0) broken("component is not an orientable surface");
    sc.genus = twice_genus / 2;
    s.components.push_back(sc);
  }

  if (s.euler_characteristic != s.euler_characteristic_pieces)
    broken("traced Euler characteristic differs from piece accounting");
  if (s.normalized_complexity() != s.scl) broken("-chi/2n differs from the scl value");
  return s;
}

ExtremalSurface extremal_surface(const Chain& c, std::optional<Mode> mode) {
  SclOptions opts;
  opts.mode = mode.value_or(c.letter_count() <= kOracleLetterLimit ? Mode::Oracle : Mode::Fast);
  return extremal_surface(compute_scl(c, opts));
}

}  // namespace scl
