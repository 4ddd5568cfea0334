#include "scl/certificate.hpp"

#include <chrono>

#include "scl/error.hpp"

namespace scl {

long SurfaceData::chi() const {
  long total = 0;
  for (int g : genera) total += 2 - 2 * static_cast<long>(g);
  return total;
}

void SurfaceData::validate() const {
  if (genera.empty()) throw Error(Errc::InvalidSurface, "surface has no components");
  for (int g : genera)
    if (g < 2)
      throw Error(Errc::InvalidSurface,
                  "component of genus " + std::to_string(g) + " (sphere and torus components are excluded)");
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Incompressible: return "incompressible";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NormMinimizingInjective: return "norm_minimizing_injective";
  }
  return "?";
}

std::string CoverIndex::str() const { return value ? std::to_string(*value) : "infinity"; }

void SolverSummary::add(const SclResult& r) {
  mode = r.mode;
  ++solves;
  variables += r.lp_stats.variables;
  rows += r.lp_stats.rows;
  wall_ms += r.lp_stats.wall_ms;
}

namespace {

void validate_factor(const FactorDescriptor& f) {
  if (f.word_image.empty()) throw Error(Errc::TrivialWord, "word image in " + f.label + " is trivial");
  if (const auto* free = std::get_if<FreeGroupFactor>(&f.kind)) {
    if (free->rank < 1 || free->rank > kMaxRank)
      throw Error(Errc::InvalidArgument, "free factor rank out of range");
    if (f.word_image.max_generator() >= free->rank)
      throw Error(Errc::InvalidArgument, "word image uses generators outside " + f.label);
    if (!is_homologically_trivial(f.word_image))
      throw Error(Errc::NotHomologicallyTrivial, "word image in " + f.label + " is not homologically trivial");
  }
}

}  // namespace

Rational factor_scl(const FactorDescriptor& f, const CertifyOptions& opts, SolverSummary* summary) {
  validate_factor(f);
  if (const auto* ext = std::get_if<ExternalFactor>(&f.kind)) {
    if (!ext->scl_value) throw Error(Errc::MissingExternalScl, "no scl value supplied for " + ext->name);
    if (*ext->scl_value < 0) throw Error(Errc::NegativeScl, "scl of " + ext->name + " is negative");
    return *ext->scl_value;
  }
  SclResult r = scl(Chain::from_word(f.word_image), opts.scl);
  if (summary) summary->add(r);
  return r.value;
}

Rational amalgam_norm(const AmalgamSpec& spec, const CertifyOptions& opts) {
  return 2 * (factor_scl(spec.left, opts) + factor_scl(spec.right, opts));
}

CoverIndex min_cover_index(const Rational& norm, long chi) {
  const Rational gap = Rational(-chi) - norm;
  if (gap < 0) throw Error(Errc::InvalidInput, "norm " + to_string(norm) + " exceeds -chi = " + std::to_string(-chi));
  if (gap == 0) return CoverIndex{};
  Rational bound = 2 / gap;
  bound.canonicalize();
  mpz_class m;
  mpz_cdiv_q(m.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (m < 1) m = 1;
  if (!m.fits_slong_p()) throw Error(Errc::InvalidInput, "cover index bound overflows");
  return CoverIndex{m.get_si()};
}

CertificateVerdict check_certificate(const Rational& norm, const SurfaceData& surface) {
  surface.validate();
  if (norm < 0) throw Error(Errc::InvalidInput, "negative norm " + to_string(norm));
  const long chi = surface.chi();
  CertificateVerdict v;
  v.norm_lower_bound = norm;
  v.chi = chi;
  v.min_cover_index = min_cover_index(norm, chi);
  const Rational minus_chi(-chi);
  if (norm == minus_chi)
    v.verdict = Verdict::NormMinimizingInjective;
  else if (norm > minus_chi - 2)
    v.verdict = Verdict::Incompressible;
  else
    v.verdict = Verdict::Inconclusive;
  v.norm_in_two_z = norm.get_den() == 1 && mpz_even_p(norm.get_num_mpz_t());
  return v;
}

CertificateVerdict certify(const AmalgamSpec& spec, const SurfaceData& surface, const std::string& family,
                           const CertifyOptions& opts) {
  surface.validate();
  SolverSummary summary;
  summary.mode = opts.scl.mode;
  const Rational left = factor_scl(spec.left, opts, &summary);
  const Rational right = factor_scl(spec.right, opts, &summary);
  Rational norm = 2 * (left + right);
  norm.canonicalize();

  CertificateVerdict v = check_certificate(norm, surface);
  v.family = family;
  v.word = spec.left.word_image.str();
  v.scl_left = left;
  v.scl_right = right;
  v.norm_is_exact = spec.h2_trivial_both;
  v.solver = summary;
  for (const FactorDescriptor* f : {&spec.left, &spec.right}) {
    if (const auto* ext = std::get_if<ExternalFactor>(&f->kind)) {
      v.external_inputs.push_back({"scl_" + ext->name + "(" + f->word_image.str() + ")", *ext->scl_value,
                                   ext->provenance});
      v.conditional = true;
    }
  }
  return v;
}

namespace {

const Word& letter_word(int generator) {
  static const auto table = [] {
    std::vector<Word> t;
    for (int g = 0; g < kMaxRank; ++g) t.push_back(Word(std::vector{Letter(g, false)}));
    return t;
  }();
  return table.at(static_cast<std::size_t>(generator));
}

// w = [a,b][c,v] in F(a,b,c).
FactorDescriptor family_factor(const Word& v) {
  if (v.max_generator() > 2) throw Error(Errc::InvalidArgument, "v must be a word in a, b, c");
  const Word cv = commutator(letter_word(2), v);
  if (cv.empty()) throw Error(Errc::DegenerateFamily, "[c," + v.str() + "] is trivial");
  const Word w = commutator(letter_word(0), letter_word(1)) * cv;
  if (w.empty()) throw Error(Errc::DegenerateFamily, "[a,b][c," + v.str() + "] is trivial");
  return FactorDescriptor{FreeGroupFactor{3}, w, "F(a,b,c)"};
}

// prod [x_i, y_i], with x_i, y_i the generators 2i, 2i+1.
FactorDescriptor surface_group_relator(int g) {
  if (g < 1) throw Error(Errc::InvalidArgument, "g must be at least 1");
  if (2 * g > kMaxRank) throw Error(Errc::InvalidArgument, "g too large for the alphabet");
  std::vector<CommutatorPair> pairs;
  for (int i = 0; i < g; ++i) pairs.push_back({letter_word(2 * i), letter_word(2 * i + 1)});
  std::string label = g == 1 ? "F(x,y)" : "F(x1,y1,...,x" + std::to_string(g) + ",y" + std::to_string(g) + ")";
  return FactorDescriptor{FreeGroupFactor{2 * g}, product_of_commutators(pairs), label};
}

}  // namespace

CertificateVerdict build_example1(const Word& v, const CertifyOptions& opts) {
  AmalgamSpec spec{family_factor(v), surface_group_relator(1), true};
  return certify(spec, SurfaceData::connected(3), "example1", opts);
}

CertificateVerdict build_example2(const Word& v, int g, const CertifyOptions& opts) {
  AmalgamSpec spec{family_factor(v), surface_group_relator(g), true};
  return certify(spec, SurfaceData::connected(g + 2), "example2", opts);
}

CertificateVerdict build_example3(const Rational& scl_h, const std::string& provenance, const CertifyOptions& opts) {
  if (scl_h < 0) throw Error(Errc::NegativeScl, "scl_H([a,b]) must be nonnegative");
  FactorDescriptor h{ExternalFactor{"H", scl_h, provenance}, commutator(letter_word(0), letter_word(1)), "H"};
  AmalgamSpec spec{surface_group_relator(1), h, false};
  return certify(spec, SurfaceData::connected(2), "example3", opts);
}

Example4Report build_example4(int n, const std::vector<int>& signs, const std::vector<Word>& conjugators,
                              const CertifyOptions& opts) {
  const SeifertFamilyWord sw = seifert_family_word(n, signs, conjugators);
  Example4Report r;
  r.n = n;
  r.signs = signs;
  r.conjugators = conjugators;
  r.relator = sw.word;
  r.proper_power = sw.proper_power;
  if (sw.word.empty())
    r.warnings.push_back("relator is trivial: H is free on a, b");
  else if (sw.proper_power)
    r.warnings.push_back("relator is a proper power: H has torsion");
  r.reference_scl = make_rational(n - 1, 2 * n);
  r.solver.mode = opts.scl.mode;
  SclResult upper = scl(Chain::from_word(commutator(letter_word(0), letter_word(1))), opts.scl);
  r.solver.add(upper);
  r.free_upper_bound = upper.value;
  return r;
}

}  // namespace scl
