#pragma once

// JSON renderings. Rationals are "p/q" strings; only wall-clock times are
// floating point.

#include <span>

#include <json.hpp>

#include "scl/certificate.hpp"
#include "scl/experiment.hpp"
#include "scl/solver.hpp"
#include "scl/surface.hpp"

namespace scl {

nlohmann::ordered_json to_json(const SclResult& r);
nlohmann::ordered_json to_json(const ExtremalSurface& s);
nlohmann::ordered_json to_json(const CertificateVerdict& v);
nlohmann::ordered_json to_json(const Example4Report& r);
nlohmann::ordered_json to_json(const ScanConfig& cfg);
nlohmann::ordered_json to_json(std::span<const LengthSummary> summary);

}  // namespace scl
