#pragma once

#include "kspec/spec_io.hpp"

#include <numbers>
#include <string>

namespace kspec::test {

inline constexpr double kPi = std::numbers::pi;

inline std::string fixture(const std::string& name) { return std::string(KSPEC_FIXTURES) + "/" + name; }
inline LoadedSpec load_fixture(const std::string& name) { return load_spec(fixture(name)); }

} // namespace kspec::test
