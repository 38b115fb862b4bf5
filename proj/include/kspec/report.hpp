#pragma once

#include "kspec/conformal.hpp"
#include "kspec/geometry.hpp"
#include "kspec/oracle.hpp"
#include "kspec/region.hpp"
#include "kspec/spec_io.hpp"
#include "kspec/spectra.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace kspec {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Finite values as numbers, infinities as "inf"/"-inf".
json number_json(double v);
// Angle rounded to 12 significant digits.
json angle_json(double v);
// "pi/2", "3*pi/4", ... when v is within 1e-9 of a multiple of pi/24.
std::optional<std::string> angle_symbol(double v);

json to_json(const SemigroupClass& c);
json to_json(const Primitive& p, bool symbolic);
json to_json(const SpectrumRegion& r, bool symbolic);
json to_json(const SpectrumBracket& b);
json to_json(const GeometrySummary& g);
json to_json(const MembershipResult& m);
json to_json(const AgreementReport& r);
json to_json(const GrowthReport& g);
json spec_json(const LoadedSpec& s);

std::string raster_csv(const Raster& r);
std::string raster_svg(const Raster& r);

// Writes through a temporary file in the same directory, then renames it into place.
void write_atomic(const std::string& path, const std::string& content);

} // namespace kspec
