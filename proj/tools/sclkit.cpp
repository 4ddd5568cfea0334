// sclkit: scl of free-group chains, extremal surfaces, amalgam certificates
// and random scans.
//
// Exit codes: 0 ok or certified, 1 inconclusive, 2 parse or configuration
// error, 3 chain not homologically trivial, 4 internal error, 5 guard or
// timeout.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scl/certificate.hpp"
#include "scl/error.hpp"
#include "scl/experiment.hpp"
#include "scl/json.hpp"
#include "scl/solver.hpp"
#include "scl/surface.hpp"

namespace {

using scl::Errc;
using scl::Error;
using scl::Rational;

int exit_code(Errc code) {
  switch (code) {
    case Errc::NotHomologicallyTrivial: return 3;
    case Errc::OracleTooLarge:
    case Errc::Timeout: return 5;
    case Errc::InternalInvariantViolation: return 4;
    default: return 2;
  }
}

struct Globals {
  std::string mode = "fast";
  std::string format;
  std::optional<double> timeout;
  std::string out;
  std::uint64_t seed = 42;
  std::optional<int> rank;
};

scl::SclOptions solver_options(const Globals& g) {
  scl::SclOptions opts;
  opts.mode = scl::parse_mode(g.mode);
  if (g.timeout) {
    if (!(*g.timeout > 0)) throw Error(Errc::InvalidArgument, "--timeout must be positive");
    opts.deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(*g.timeout));
  }
  return opts;
}

bool json_format(const Globals& g, bool json_default) {
  if (g.format.empty()) return json_default;
  return g.format == "json";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write " + path);
  f << text;
  if (!f) throw Error(Errc::InvalidArgument, "failed writing " + path);
}

// Writes to --out when given, else stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  if (text.empty()) parts.emplace_back();
  return parts;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::ParseError, std::string("bad integer for ") + what + ": '" + s + "'");
}

int cmd_scl(const Globals& g, const std::string& text) {
  const scl::Chain chain = scl::parse_chain(text, g.rank.value_or(scl::kMaxRank));
  const scl::SclResult r = scl::scl(chain, solver_options(g));
  if (json_format(g, false))
    emit(g, scl::to_json(r).dump(2) + "\n");
  else
    emit(g, scl::to_string(r.value) + "\n");
  return 0;
}

int cmd_surface(const Globals& g, const std::string& text) {
  const scl::Chain chain = scl::parse_chain(text, g.rank.value_or(scl::kMaxRank));
  const scl::SclComputation comp = scl::compute_scl(chain, solver_options(g));
  const scl::ExtremalSurface s = scl::extremal_surface(comp);
  const std::string doc = scl::to_json(s).dump(2) + "\n";
  if (!g.out.empty()) write_file(g.out, doc);
  if (json_format(g, false) && g.out.empty()) {
    std::cout << doc;
    return 0;
  }
  std::cout << "scl " << scl::to_string(s.scl) << "\n"
            << "degree " << s.degree << "\n"
            << "chi " << s.euler_characteristic << "\n";
  long genus = 0;
  for (const auto& c : s.components) genus += c.genus;
  std::cout << "genus " << genus << "\n"
            << "components " << s.components.size() << "\n"
            << "boundary " << s.boundary_component_count() << "\n"
            << "-chi/2n " << scl::to_string(s.normalized_complexity()) << "\n";
  return 0;
}

struct CertifyArgs {
  std::string family;
  std::string v;
  int g = 1;
  std::string scl_h;
  std::string provenance = "supplied on the command line";
  std::string scl_left, scl_right, left_word, right_word;
  std::string genus = "3";
  int n = 0;
  std::string signs, conjugators;
};

std::string verdict_text(const scl::CertificateVerdict& v) {
  std::ostringstream o;
  o << "family " << v.family << "\n";
  if (!v.word.empty()) o << "word " << v.word << "\n";
  o << "scl_left " << scl::to_string(v.scl_left) << "\n"
    << "scl_right " << scl::to_string(v.scl_right) << "\n"
    << "norm " << scl::to_string(v.norm_lower_bound) << (v.norm_is_exact ? "" : " (lower bound)") << "\n"
    << "chi " << v.chi << "\n"
    << "verdict " << scl::verdict_name(v.verdict) << (v.conditional ? " (conditional)" : "") << "\n"
    << "norm_in_2Z " << (v.norm_in_two_z ? "true" : "false") << "\n"
    << "min_cover_index " << v.min_cover_index.str() << " (derived)\n";
  for (const auto& e : v.external_inputs)
    o << "external " << e.name << " = " << scl::to_string(e.value) << " [" << e.provenance << "]\n";
  return o.str();
}

scl::SurfaceData parse_surface(const std::string& genus) {
  scl::SurfaceData s;
  for (const std::string& part : split(genus, ',')) s.genera.push_back(parse_int(part, "--genus"));
  return s;
}

scl::FactorDescriptor amalgam_factor(const std::string& side, const std::string& value, const std::string& word,
                                     const std::string& provenance, int rank) {
  if (value.empty() == word.empty())
    throw Error(Errc::InvalidArgument, "give exactly one of --scl-" + side + " and --" + side + "-word");
  if (!word.empty()) {
    const scl::Word w = scl::parse_word(word, rank);
    return scl::FactorDescriptor{scl::FreeGroupFactor{std::max(1, w.max_generator() + 1)}, w, "F"};
  }
  // The class is not named, so a placeholder image stands in for it.
  const scl::Word placeholder = scl::parse_word("[a,b]");
  return scl::FactorDescriptor{scl::ExternalFactor{side, scl::parse_rational(value), provenance}, placeholder, side};
}

int cmd_certify(const Globals& g, const CertifyArgs& a) {
  scl::CertifyOptions opts;
  opts.scl = solver_options(g);
  const int rank = g.rank.value_or(scl::kMaxRank);
  const bool json = json_format(g, true);

  if (a.family == "example4") {
    std::vector<int> signs;
    for (const std::string& s : split(a.signs, ',')) {
      if (s == "+" || s == "+1" || s == "1") signs.push_back(1);
      else if (s == "-" || s == "-1") signs.push_back(-1);
      else throw Error(Errc::ParseError, "bad sign '" + s + "'");
    }
    std::vector<scl::Word> conj;
    for (const std::string& c : split(a.conjugators, ','))
      conj.push_back(c.empty() ? scl::Word() : scl::parse_word(c, 2));
    const scl::Example4Report r = scl::build_example4(a.n, signs, conj, opts);
    if (json) {
      emit(g, scl::to_json(r).dump(2) + "\n");
    } else {
      std::ostringstream o;
      o << "relator " << r.relator.str() << "\n"
        << "proper_power " << (r.proper_power ? "true" : "false") << "\n";
      for (const auto& w : r.warnings) o << "warning " << w << "\n";
      o << "reference_scl " << scl::to_string(r.reference_scl) << " [external]\n"
        << "free_upper_bound " << scl::to_string(r.free_upper_bound) << " [solved]\n"
        << "target_interval (" << scl::to_string(r.reference_scl) << ", " << scl::to_string(r.free_upper_bound)
        << ")\n";
      emit(g, o.str());
    }
    return 0;
  }

  scl::CertificateVerdict v;
  if (a.family == "example1") {
    v = scl::build_example1(scl::parse_word(a.v, 3), opts);
  } else if (a.family == "example2") {
    v = scl::build_example2(scl::parse_word(a.v, 3), a.g, opts);
  } else if (a.family == "example3") {
    if (a.scl_h.empty()) throw Error(Errc::MissingExternalScl, "example3 needs --scl-h");
    v = scl::build_example3(scl::parse_rational(a.scl_h), a.provenance, opts);
  } else if (a.family == "amalgam") {
    scl::AmalgamSpec spec{amalgam_factor("left", a.scl_left, a.left_word, a.provenance, rank),
                          amalgam_factor("right", a.scl_right, a.right_word, a.provenance, rank), true};
    spec.h2_trivial_both = !spec.left.is_external() && !spec.right.is_external();
    v = scl::certify(spec, parse_surface(a.genus), "amalgam", opts);
    if (spec.left.is_external()) v.word = "";
    for (auto& e : v.external_inputs) e.name = e.name.substr(0, e.name.find('('));
  } else {
    throw Error(Errc::InvalidArgument, "unknown family '" + a.family + "'");
  }
  emit(g, json ? scl::to_json(v).dump(2) + "\n" : verdict_text(v));
  return v.verdict == scl::Verdict::Inconclusive ? 1 : 0;
}

struct ExperimentArgs {
  std::string lengths = "4,8,16,24";
  std::size_t samples = 30;
  unsigned workers = 0;
  bool timing = false;
};

int cmd_experiment(const Globals& g, const ExperimentArgs& a) {
  scl::ScanConfig cfg;
  for (const std::string& part : split(a.lengths, ',')) {
    const int n = parse_int(part, "--lengths");
    if (n <= 0) throw Error(Errc::InvalidArgument, "lengths must be positive");
    cfg.lengths.push_back(static_cast<std::size_t>(n));
  }
  cfg.samples_per_length = a.samples;
  cfg.seed = g.seed;
  cfg.rank = g.rank.value_or(3);
  cfg.mode = scl::parse_mode(g.mode);
  cfg.timeout_seconds = g.timeout.value_or(120.0);
  cfg.workers = a.workers;
  cfg.record_wall_time = a.timing;
  cfg.validate();

  const std::vector<scl::ScanRecord> records = scl::run_scan(cfg);
  const std::vector<scl::LengthSummary> summary = scl::summarize(records);
  const std::vector<std::string> warnings = scl::trend_warnings(summary);

  nlohmann::ordered_json doc = {{"config", scl::to_json(cfg)},
                                {"summary", scl::to_json(std::span<const scl::LengthSummary>(summary))},
                                {"trend_warnings", warnings}};
  if (!g.out.empty()) {
    write_file(g.out + ".csv", scl::to_csv(records));
    write_file(g.out + ".summary.json", doc.dump(2) + "\n");
  }
  if (json_format(g, false)) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "n samples timeouts min max mean median\n";
    for (const auto& s : summary) {
      auto r = [](const std::optional<Rational>& x) { return x ? scl::to_string(*x) : std::string("-"); };
      std::cout << s.n << ' ' << s.samples << ' ' << s.timeouts << ' ' << r(s.min) << ' ' << r(s.max) << ' '
                << r(s.mean) << ' ' << r(s.median) << "\n";
    }
    for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact scl in free groups, extremal surfaces and incompressibility certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--mode", g.mode, "Solver mode")->check(CLI::IsMember({"fast", "oracle"}));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--timeout", g.timeout, "Seconds per solve (per sample for experiment, default 120 there)");
  app.add_option("--out", g.out, "Output path (prefix for experiment)");
  app.add_option("--seed", g.seed, "Experiment seed");
  app.add_option("--rank", g.rank, "Generators allowed in parsed words (experiment: alphabet of v, default 3)")
      ->check(CLI::Range(1, scl::kMaxRank));

  std::string chain_text;
  auto* scl_cmd = app.add_subcommand("scl", "Compute scl of a chain");
  scl_cmd->add_option("chain", chain_text, "Chain such as \"aabb + 2*AB\"")->required();

  std::string surface_text;
  auto* surface_cmd = app.add_subcommand("surface", "Extract an extremal surface");
  surface_cmd->add_option("chain", surface_text, "Chain")->required();

  CertifyArgs ca;
  auto* certify_cmd = app.add_subcommand("certify", "Incompressibility certificate for an amalgam");
  certify_cmd->add_option("family", ca.family, "example1|example2|example3|example4|amalgam")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "example4", "amalgam"}));
  certify_cmd->add_option("--v", ca.v, "Word v in [a,b][c,v] (examples 1, 2)");
  certify_cmd->add_option("--g", ca.g, "Genus of the right-hand relator (example 2)");
  certify_cmd->add_option("--scl-h", ca.scl_h, "scl_H([a,b]) (example 3)");
  certify_cmd->add_option("--provenance", ca.provenance, "Source of externally supplied scl values");
  auto* sl = certify_cmd->add_option("--scl-left", ca.scl_left, "scl of w in the left factor");
  auto* sr = certify_cmd->add_option("--scl-right", ca.scl_right, "scl of w in the right factor");
  certify_cmd->add_option("--left-word", ca.left_word, "Solve the left factor for this free-group word")->excludes(sl);
  certify_cmd->add_option("--right-word", ca.right_word, "Solve the right factor for this free-group word")->excludes(sr);
  certify_cmd->add_option("--genus", ca.genus, "Surface genus, or comma-separated genera");
  certify_cmd->add_option("--N", ca.n, "Power N (example 4)");
  certify_cmd->add_option("--signs", ca.signs, "Comma-separated + and - (example 4)");
  certify_cmd->add_option("--conjugators", ca.conjugators, "Comma-separated conjugators in a, b (example 4)");

  ExperimentArgs ea;
  auto* exp_cmd = app.add_subcommand("experiment", "Scan scl([a,b][c,v]) over random v");
  exp_cmd->add_option("--lengths", ea.lengths, "Comma-separated increasing lengths");
  exp_cmd->add_option("--samples", ea.samples, "Samples per length");
  exp_cmd->add_option("--workers", ea.workers, "Worker threads (0: all cores)");
  exp_cmd->add_flag("--timing", ea.timing, "Record wall_ms per sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*scl_cmd) return cmd_scl(g, chain_text);
    if (*surface_cmd) return cmd_surface(g, surface_text);
    if (*certify_cmd) return cmd_certify(g, ca);
    if (*exp_cmd) return cmd_experiment(g, ea);
  } catch (const Error& e) {
    std::cerr << "error (" << scl::errc_name(e.code()) << "): " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
