#pragma once

#include "kspec/domain.hpp"
#include "kspec/geometry.hpp"
#include "kspec/region.hpp"

#include <string>
#include <vector>

namespace kspec {

struct SpaceSpec {
    enum Kind { Dirichlet, Hardy, Bergman };
    Kind kind = Dirichlet;
    double p = 2.0;
    double alpha = 0.0;

    static SpaceSpec dirichlet();
    static SpaceSpec hardy(double p);
    static SpaceSpec bergman(double p, double alpha);
    // Hardy spaces behave as Bergman spaces with alpha = -1 in the weighted integrals.
    double weight_alpha() const { return kind == Hardy ? -1.0 : alpha; }
    std::string name() const;
};

// Exact spectra of strips, half-strips, sectors and the upper half-plane.
SpectrumBracket standard_domain_spectrum(const CatalogShape& shape, const SpaceSpec& space);
bool is_standard_shape(const CatalogShape& shape);

// Membership of lambda in the Dirichlet spectrum of a hyperbolic domain via the defining integral.
Membership dirichlet_membership(const TailProfile& tail, cplx lambda);
Membership dirichlet_membership(const KoenigsDomain& d, cplx lambda, const GeometryOptions& opts = {});

// Engine driven by the critical abscissa.
SpectrumBracket dirichlet_spectrum_hyperbolic(const TailProfile& tail);
SpectrumBracket dirichlet_spectrum_hyperbolic(const KoenigsDomain& d, const GeometryOptions& opts = {});
// Engine driven by the tail area and the decay exponent; a bracket when the exponent oscillates.
SpectrumBracket dirichlet_spectrum_hyperbolic_by_W_delta(const TailProfile& tail);
SpectrumBracket dirichlet_spectrum_hyperbolic_by_W_delta(const KoenigsDomain& d, const GeometryOptions& opts = {});

// Case tables for parabolic domains. The profile must describe an upper (or zero-step) domain.
SpectrumBracket dirichlet_parabolic_bracket(const ArgumentProfile& args, SemigroupClass::Kind step);
SpectrumBracket hardy_bergman_parabolic_bracket(const ArgumentProfile& args, SemigroupClass::Kind step);

SpectrumBracket dirichlet_parabolic_bracket(const KoenigsDomain& d, const GeometryOptions& opts = {});
SpectrumBracket hardy_bergman_parabolic_bracket(const KoenigsDomain& d, const SpaceSpec& space,
                                                bool finite_shift = false, const GeometryOptions& opts = {});

// Dispatches on domain class, catalog shape and space.
SpectrumBracket compute_spectrum(const KoenigsDomain& d, const SpaceSpec& space, bool finite_shift = false,
                                 const GeometryOptions& opts = {});

struct MembershipResult {
    Membership verdict = Membership::Unknown;
    // "region", "defining-integral" or "oracle".
    std::string source;
    std::string detail;
};

// Theorem membership, falling back to the area-integral oracle where a bracket leaves lambda undecided.
MembershipResult resolve_membership(const KoenigsDomain& d, const SpaceSpec& space, cplx lambda,
                                    bool finite_shift = false, const GeometryOptions& opts = {});

struct ChainViolation {
    cplx lambda;
    Membership dirichlet, hardy, bergman;
};

struct ChainReport {
    int checked = 0;
    std::vector<ChainViolation> violations;
};

// Dirichlet In implies Hardy not Out; Dirichlet or Hardy In implies Bergman not Out.
ChainReport inclusion_chain_check(const SpectrumBracket& dirichlet, const SpectrumBracket& hardy,
                                  const SpectrumBracket& bergman, const Window& w, int nx, int ny);
ChainReport inclusion_chain_check(const KoenigsDomain& d, double p, double alpha, const Window& w, int nx, int ny,
                                  const GeometryOptions& opts = {});

} // namespace kspec
