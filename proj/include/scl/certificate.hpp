#pragma once

// Incompressibility certificates for closed surfaces in amalgams
// G = J *_<w> K.
//
// The class carried by such a surface has norm at least
// 2 (scl_J(w) + scl_K(w)). A surface S of genus >= 2 is incompressible when
// -chi(S) - 2 < norm < -chi(S), and pi_1-injective when norm = -chi(S).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scl/rational.hpp"
#include "scl/solver.hpp"
#include "scl/word.hpp"

namespace scl {

struct FreeGroupFactor {
  int rank = 0;
};

// A factor whose scl is supplied from outside the solver.
struct ExternalFactor {
  std::string name;
  std::optional<Rational> scl_value;
  std::string provenance;
};

struct FactorDescriptor {
  std::variant<FreeGroupFactor, ExternalFactor> kind;
  Word word_image;
  std::string label;  // display name such as "F(a,b,c)"

  bool is_external() const { return std::holds_alternative<ExternalFactor>(kind); }
};

struct AmalgamSpec {
  FactorDescriptor left;
  FactorDescriptor right;
  bool h2_trivial_both = true;  // then the amalgam class is unique
};

// Closed oriented surface, one genus per component.
struct SurfaceData {
  std::vector<int> genera;

  static SurfaceData connected(int genus) { return SurfaceData{{genus}}; }
  long chi() const;
  // Throws Errc::InvalidSurface for an empty list or a component of genus < 2.
  void validate() const;
};

enum class Verdict { Incompressible, Inconclusive, NormMinimizingInjective };

const char* verdict_name(Verdict v);

// Smallest index of a cover in which a compression is not excluded by the
// norm gap; absent means infinity.
struct CoverIndex {
  std::optional<long> value;

  bool infinite() const { return !value.has_value(); }
  std::string str() const;
  friend bool operator==(const CoverIndex&, const CoverIndex&) = default;
};

struct ExternalInput {
  std::string name;
  Rational value;
  std::string provenance;
};

// Totals over the scl solves behind a certificate.
struct SolverSummary {
  Mode mode = Mode::Fast;
  std::size_t solves = 0;
  std::size_t variables = 0;
  std::size_t rows = 0;
  double wall_ms = 0.0;

  void add(const SclResult& r);
};

struct CertificateVerdict {
  std::string family;
  std::string word;
  Rational scl_left;
  Rational scl_right;
  Rational norm_lower_bound;
  bool norm_is_exact = true;
  long chi = 0;
  Verdict verdict = Verdict::Inconclusive;
  bool norm_in_two_z = false;
  CoverIndex min_cover_index;
  SolverSummary solver;
  std::vector<ExternalInput> external_inputs;
  // True when any input came from outside the solver.
  bool conditional = false;
};

struct CertifyOptions {
  SclOptions scl;
};

// scl of the word image in one factor: solved for free factors, read from
// the descriptor for external ones (Errc::MissingExternalScl if absent).
Rational factor_scl(const FactorDescriptor& f, const CertifyOptions& opts = {},
                    SolverSummary* summary = nullptr);

// 2 (scl_left + scl_right).
Rational amalgam_norm(const AmalgamSpec& spec, const CertifyOptions& opts = {});

// Verdict, norm_in_two_z and min_cover_index for the given norm and surface.
// Throws Errc::InvalidSurface or, when norm > -chi, Errc::InvalidInput.
CertificateVerdict check_certificate(const Rational& norm, const SurfaceData& surface);

// Smallest integer m >= 2 / (-chi - norm); infinity when norm = -chi.
// Throws Errc::InvalidInput when norm > -chi.
CoverIndex min_cover_index(const Rational& norm, long chi);

// Full certificate for an amalgam and a candidate surface.
CertificateVerdict certify(const AmalgamSpec& spec, const SurfaceData& surface,
                           const std::string& family, const CertifyOptions& opts = {});

// w = [a,b][c,v] in F(a,b,c) against [x,y] in F(x,y), genus-3 surface.
// Throws Errc::DegenerateFamily when [c,v] is trivial.
CertificateVerdict build_example1(const Word& v, const CertifyOptions& opts = {});

// w = [a,b][c,v] against a product of g commutators, genus g + 2 surface.
CertificateVerdict build_example2(const Word& v, int g, const CertifyOptions& opts = {});

// [x,y] in F(x,y) against [a,b] in an external group H with the given scl,
// genus-2 surface. Throws Errc::NegativeScl when scl_h < 0.
CertificateVerdict build_example3(const Rational& scl_h, const std::string& provenance,
                                  const CertifyOptions& opts = {});

// Report for one-relator quotients H = <a,b | v> with v a balanced product
// of conjugated powers [a,b]^{+-N}. No verdict: scl in H is not computed.
struct Example4Report {
  int n = 0;
  std::vector<int> signs;
  std::vector<Word> conjugators;
  Word relator;
  bool proper_power = false;
  std::vector<std::string> warnings;
  Rational reference_scl;     // (N - 1) / (2N), external
  Rational free_upper_bound;  // scl_{F(a,b)}([a,b]), solved
  SolverSummary solver;
};

Example4Report build_example4(int n, const std::vector<int>& signs, const std::vector<Word>& conjugators,
                              const CertifyOptions& opts = {});

}  // namespace scl
