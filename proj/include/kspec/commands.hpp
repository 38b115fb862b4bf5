#pragma once

#include "kspec/region.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kspec {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitSpec = 2, kExitInconclusive = 3, kExitUnsupported = 4 };

struct CommandOptions {
    std::string spec_path;
    std::string space = "dirichlet";
    double p = 2.0;
    double alpha = 0.0;
    std::string lambda;  // "re,im"
    std::string window = "-2,0,-2,2";
    std::string grid = "41"; // "N" or "NX,NY"
    std::string format = "csv";
    std::string out;
    double tmax = 1024.0;
    // Hyperbolic Dirichlet engine: "abscissa" (critical abscissa) or "tail" (tail area and decay exponent).
    std::string engine = "abscissa";
    bool oracle = true;
};

const std::vector<std::string>& command_names();

// Runs one command, printing JSON (or raster text) to out and a JSON error object to err.
int run_command(const std::string& name, const CommandOptions& opts, std::ostream& out, std::ostream& err);

cplx parse_lambda(const std::string& text);
Window parse_window(const std::string& text);
std::pair<int, int> parse_grid(const std::string& text);

} // namespace kspec
