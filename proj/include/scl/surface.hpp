#pragma once

// Explicit admissible surfaces realized from an optimal LP vertex.
//
// Denominators are cleared to get integer piece and band counts at degree n.
// Band ends and dummy sides are glued in canonical order, the resulting
// cell complex is traced, and its Euler characteristic is computed both from
// the cells (V - E + F) and from the piece weights.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scl/solver.hpp"

namespace scl {

// A side of one copy of a piece: piece indexes ExtremalSurface::pieces.
struct SideRef {
  std::size_t piece = 0;
  std::size_t copy = 0;
  std::size_t side = 0;

  friend bool operator==(const SideRef&, const SideRef&) = default;
};

struct SurfacePiece {
  std::size_t type = 0;  // index into the solver's piece list
  PieceType piece;
  long multiplicity = 0;
};

// Rectangles pairing positions p < q.
struct SurfaceBand {
  std::size_t p = 0;
  std::size_t q = 0;
  long multiplicity = 0;
};

// Rectangle `copy` of band `band`: its end over arc p->q is glued to
// `forward`, its end over arc q->p to `backward`.
struct BandGluing {
  std::size_t band = 0;
  std::size_t copy = 0;
  SideRef forward;
  SideRef backward;
};

// Dummy sides g->h (first, g < h) and h->g (second) glued together.
struct DummyGluing {
  SideRef first;
  SideRef second;
};

struct BoundaryComponent {
  std::size_t term = 0;
  long power = 0;  // positive
  std::size_t component = 0;
};

struct SurfaceComponent {
  long euler_characteristic = 0;
  long genus = 0;
  std::size_t boundary_components = 0;
};

struct ExtremalSurface {
  Chain chain;
  Mode mode = Mode::Fast;
  Rational scl;
  long degree = 0;

  std::vector<SurfacePiece> pieces;
  std::vector<SurfaceBand> bands;
  std::vector<BandGluing> band_gluings;
  std::vector<DummyGluing> dummy_gluings;

  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  long euler_characteristic = 0;        // V - E + F of the traced complex
  long euler_characteristic_pieces = 0;  // polygons - dummy pairs - bands
  std::vector<BoundaryComponent> boundary;
  std::vector<SurfaceComponent> components;

  std::size_t boundary_component_count() const { return boundary.size(); }
  // -chi / (2n)
  Rational normalized_complexity() const;
};

// Builds the surface from a finished computation. Throws
// Errc::InternalInvariantViolation if the gluing does not close up into an
// admissible surface realizing the LP value.
ExtremalSurface extremal_surface(const SclComputation& comp);

// Solves first. Without a mode, oracle mode is used when the chain is small
// enough and fast mode otherwise.
ExtremalSurface extremal_surface(const Chain& c, std::optional<Mode> mode = std::nullopt);

}  // namespace scl
