#pragma once

#include "kspec/domain.hpp"
#include "kspec/numerics.hpp"
#include "kspec/region.hpp"
#include "kspec/spectra.hpp"

#include <string>
#include <vector>

namespace kspec {

struct WeightSpec {
    enum Kind { DirichletWeight, GreenPower };
    Kind kind = DirichletWeight;
    double alpha = 0.0;

    static WeightSpec dirichlet() { return {}; }
    static WeightSpec green_power(double alpha);
    static WeightSpec for_space(const SpaceSpec& space);
};

struct OracleOptions {
    int K = 40;
    double boundary_tol = 0.05;
    DivergencePolicy policy{};
};

struct OracleResult {
    Verdict verdict = Verdict::Inconclusive;
    // Truncated integral; for GreenPower weights only accurate up to the surrogate constants.
    double value = 0.0;
    bool surrogate = false;
    // Running integral after each truncation.
    std::vector<double> partials;
    std::string method; // "polar" or "cartesian"
    std::string diagnostic;
};

// Weighted area integral of |exp(lambda w)|^p over the domain (p = 2 for the Dirichlet weight).
OracleResult area_integral_classify(const KoenigsDomain& d, cplx lambda, const WeightSpec& w, double p,
                                    const OracleOptions& opts = {});

Membership oracle_membership(const OracleResult& r);

struct AgreementEntry {
    cplx lambda;
    Membership theorem = Membership::Unknown;
    Verdict oracle = Verdict::Inconclusive;
    double boundary_distance = 0.0;
    bool mismatch = false;
    bool excused = false;
};

struct AgreementReport {
    std::vector<AgreementEntry> entries;
    int agreements = 0;
    int excused = 0;
    int unexcused = 0;
    // Grid points where the theorem result was a bracket gap and no comparison was made.
    int theorem_unknown = 0;
};

AgreementReport oracle_vs_theorem(const KoenigsDomain& d, const SpaceSpec& space, const SpectrumBracket& theorem,
                                  const Window& w, int nx, int ny, const OracleOptions& opts = {});

} // namespace kspec
