#pragma once

#include "kspec/domain.hpp"
#include "kspec/spectra.hpp"

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace kspec {

using lcplx = std::complex<long double>;

double hyperbolic_distance_origin(cplx z);
double green_disk(cplx z);
// Green function of {|arg w| < pi / (2 alpha)}.
double green_sector(double alpha, cplx z1, cplx z2);

struct GreenBounds {
    double lo = 0.0, hi = 0.0;
};
GreenBounds green_sector_bounds(double a, double b, double r, double theta);

// Catalog Koenigs map. All maps factor through the Cayley variable zeta = i(1+z)/(1-z) in the upper half-plane,
// and are evaluated in long double so that orbits far out in the domain keep their precision.
class KoenigsMap {
public:
    static KoenigsMap from_catalog(const CatalogShape& shape);

    const CatalogShape& shape() const { return shape_; }
    bool numerical_inverse() const { return numerical_inverse_; }

    cplx forward(cplx z) const;
    cplx inverse(cplx w) const;
    cplx base_point() const { return forward(cplx(0.0, 0.0)); }

    // zeta-level view used for orbits.
    lcplx forward_zeta(lcplx zeta) const { return H_(zeta); }
    lcplx inverse_zeta(lcplx w, lcplx seed) const;
    lcplx derivative_zeta(lcplx zeta) const { return dH_(zeta); }

private:
    CatalogShape shape_;
    std::function<lcplx(lcplx)> H_, dH_;
    std::function<lcplx(lcplx)> Hinv_; // empty when the inverse is numerical
    bool numerical_inverse_ = false;
};

KoenigsMap koenigs_catalog(const CatalogShape& shape);

lcplx cayley(cplx z);
cplx cayley_inverse(lcplx zeta);
// d_D(0, z) for z the Cayley preimage of zeta.
long double distance_from_zeta(lcplx zeta);

// phi_t(z), computed as the inverse map at h(z) + t.
cplx orbit_point(const KoenigsMap& m, cplx z, double t);
// Cayley coordinate of phi_t(0), by continuation in t.
lcplx orbit_zeta(const KoenigsMap& m, double t);

cplx generator_value(const KoenigsMap& m, cplx z, bool finite_difference = false);

struct NormBounds {
    double lower = 1.0, upper = 1.0;
    double log_lower = 0.0, log_upper = 0.0;
};
NormBounds norm_bounds(const SpaceSpec& space, cplx phi_t_0);
NormBounds norm_bounds_zeta(const SpaceSpec& space, lcplx zeta);

double growth_type(const SpaceSpec& space, const SemigroupClass& cls);

struct SpeedSample {
    double t = 0.0;
    double distance = 0.0;
    double ratio = 0.0;     // d / t
    double log_ratio = 0.0; // d / log t, finite-shift diagnostic (0 at t <= 1)
    NormBounds bounds;
    bool sandwich_ok = true;
};

struct GrowthReport {
    SpaceSpec space;
    double omega = 0.0;
    double target_ratio = 0.0; // mu / 2
    std::vector<SpeedSample> samples;
    std::vector<std::pair<double, double>> spectral_radius; // (t, e^{omega t})
    bool finite_shift = false;
};

GrowthReport speed_check(const KoenigsMap& m, const SemigroupClass& cls, const SpaceSpec& space, double t_max,
                         bool finite_shift = false);

} // namespace kspec
