#pragma once

#include "kspec/domain.hpp"
#include "kspec/geometry.hpp"
#include "kspec/oracle.hpp"

#include <string>
#include <vector>

namespace kspec {

struct LoadedSpec {
    explicit LoadedSpec(KoenigsDomain d) : domain(std::move(d)) {}

    KoenigsDomain domain;
    bool finite_shift = false;
    GeometryOptions geometry;
    OracleOptions oracle;
    // Positive-step domains are translated so the interval starts at 0; lower ones are reflected by the engines.
    Normalization normalization;
    std::vector<std::string> warnings;
};

// Parses a domain spec document. Throws SpecError on malformed JSON, unknown keys or invalid values.
LoadedSpec parse_spec(const std::string& json_text);
LoadedSpec load_spec(const std::string& path);

// Parses a constant expression ("pi/4", "0.5", "-inf").
double parse_constant(const std::string& text);

} // namespace kspec
