#include "kspec/conformal.hpp"

#include "kspec/errors.hpp"
#include "kspec/expr.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace kspec {

namespace {

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr lcplx kI{0.0L, 1.0L};

lcplx widen(cplx z) { return {z.real(), z.imag()}; }
cplx narrow(lcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

// Power of a point with argument in [0, 2pi), avoiding the principal branch cut.
lcplx pow_upper(lcplx z, long double k) {
    long double t = std::atan2(z.imag(), z.real());
    if (t < 0.0L) t += 2.0L * kPiL;
    return std::polar(std::pow(std::abs(z), k), k * t);
}

void require_disk(cplx z) {
    if (!(std::abs(z) < 1.0)) throw DomainOfValidity("point " + format_number(z.real()) + "+" +
                                                     format_number(z.imag()) + "i lies outside the unit disk");
}

struct CotLogSolver {
    long double x;
    // Newton in u = log zeta, keeping 0 < Im u < pi.
    bool solve(lcplx w, lcplx& u) const {
        auto H = [&](lcplx v) { return std::exp(x * v) + x * v; };
        lcplx r = H(u) - w;
        const long double scale = std::max(1.0L, std::abs(w));
        for (int it = 0; it < 200; ++it) {
            if (std::abs(r) <= 1e-16L * scale) return true;
            lcplx step = r / (x * std::exp(x * u) + x);
            long double damp = 1.0L;
            bool moved = false;
            for (int b = 0; b < 60; ++b, damp *= 0.5L) {
                lcplx v = u - damp * step;
                if (!(v.imag() > 0.0L && v.imag() < kPiL)) continue;
                lcplx rv = H(v) - w;
                if (std::abs(rv) < std::abs(r)) {
                    u = v;
                    r = rv;
                    moved = true;
                    break;
                }
            }
            if (!moved) return std::abs(r) <= 1e-12L * scale;
        }
        return std::abs(r) <= 1e-12L * scale;
    }
};

} // namespace

lcplx cayley(cplx z) {
    lcplx zl = widen(z);
    return kI * (1.0L + zl) / (1.0L - zl);
}

cplx cayley_inverse(lcplx zeta) { return narrow((zeta - kI) / (zeta + kI)); }

long double distance_from_zeta(lcplx zeta) {
    long double u = std::norm(zeta - kI) / (2.0L * zeta.imag());
    return 0.5L * std::log1p(u + std::sqrt(u * (u + 2.0L)));
}

double hyperbolic_distance_origin(cplx z) {
    require_disk(z);
    return std::atanh(std::abs(z));
}

double green_disk(cplx z) {
    if (z == cplx(0.0, 0.0)) return std::numeric_limits<double>::infinity();
    require_disk(z);
    return -std::log(std::abs(z));
}

double green_sector(double alpha, cplx z1, cplx z2) {
    if (!(alpha >= 0.5)) throw DomainOfValidity("sector Green function needs alpha >= 1/2");
    const double half = std::numbers::pi / (2.0 * alpha);
    for (cplx z : {z1, z2})
        if (z == cplx(0.0, 0.0) || !(std::abs(std::arg(z)) < half))
            throw DomainOfValidity("point outside the sector |arg w| < " + format_number(half));
    if (z1 == z2) return std::numeric_limits<double>::infinity();
    cplx u1 = std::pow(z1, alpha), u2 = std::pow(z2, alpha);
    return std::log(std::abs((u1 + std::conj(u2)) / (u1 - u2)));
}

GreenBounds green_sector_bounds(double a, double b, double r, double theta) {
    if (!(a < b)) throw DomainOfValidity("sector needs a < b");
    if (!(theta > a && theta < b)) throw DomainOfValidity("angle outside the sector");
    const double mu = std::numbers::pi / (b - a);
    const double r0 = std::exp2((b - a) / std::numbers::pi);
    if (!(r >= r0)) throw DomainOfValidity("radius below " + format_number(r0));
    const double base = std::pow(r, -mu) * std::cos(mu * (theta - 0.5 * (a + b)));
    return {0.5 * base, 8.0 * base};
}

KoenigsMap KoenigsMap::from_catalog(const CatalogShape& shape) {
    KoenigsMap m;
    m.shape_ = shape;
    switch (shape.kind) {
    case CatalogKind::UpperHalfPlane:
    case CatalogKind::Sector: {
        const CatalogShape s = shape.as_sector();
        const lcplx v = widen(s.vertex);
        const long double k = (static_cast<long double>(s.b) - s.a) / kPiL;
        const lcplx rot = std::polar(1.0L, static_cast<long double>(s.a));
        m.H_ = [=](lcplx z) { return v + rot * pow_upper(z, k); };
        m.dH_ = [=](lcplx z) { return rot * k * pow_upper(z, k) / z; };
        m.Hinv_ = [=](lcplx w) { return pow_upper((w - v) / rot, 1.0L / k); };
        break;
    }
    case CatalogKind::HorizontalStrip: {
        const long double c = static_cast<long double>(shape.y_hi) - shape.y_lo;
        const lcplx shift{0.0L, static_cast<long double>(shape.y_lo)};
        m.H_ = [=](lcplx z) { return c / kPiL * std::log(z) + shift; };
        m.dH_ = [=](lcplx z) { return c / kPiL / z; };
        m.Hinv_ = [=](lcplx w) { return std::exp(kPiL * (w - shift) / c); };
        break;
    }
    case CatalogKind::CotLog: {
        const long double x = shape.param;
        m.H_ = [=](lcplx z) { return pow_upper(z, x) + x * std::log(z); };
        m.dH_ = [=](lcplx z) { return x * pow_upper(z, x) / z + x / z; };
        m.numerical_inverse_ = true;
        break;
    }
    default: throw Unsupported("no closed-form Koenigs map for catalog shape " + shape.name());
    }
    return m;
}

KoenigsMap koenigs_catalog(const CatalogShape& shape) { return KoenigsMap::from_catalog(shape); }

lcplx KoenigsMap::inverse_zeta(lcplx w, lcplx seed) const {
    if (Hinv_) return Hinv_(w);
    CotLogSolver solver{static_cast<long double>(shape_.param)};
    lcplx u = std::log(seed);
    if (solver.solve(w, u)) return std::exp(u);
    // Fresh seeds spread across the strip 0 < Im u < pi.
    for (long double im : {kPiL / 2, kPiL / 8, 7 * kPiL / 8}) {
        u = lcplx(std::log(std::max(1.0L, std::abs(w))) / solver.x, im);
        if (solver.solve(w, u)) return std::exp(u);
    }
    throw InverseFailure("Newton iteration for the inverse Koenigs map did not converge");
}

cplx KoenigsMap::forward(cplx z) const {
    require_disk(z);
    return narrow(H_(cayley(z)));
}

cplx KoenigsMap::inverse(cplx w) const { return cayley_inverse(inverse_zeta(widen(w), kI)); }

lcplx orbit_zeta(const KoenigsMap& m, double t) {
    if (t < 0.0) throw SpecError("orbit time must be nonnegative");
    const lcplx w0 = m.forward_zeta(kI);
    if (t == 0.0) return kI;
    if (!m.numerical_inverse()) return m.inverse_zeta(w0 + static_cast<long double>(t), kI);
    lcplx zeta = kI;
    for (double s = std::min(t, 1.0 / 16.0); s < t; s *= 1.5) zeta = m.inverse_zeta(w0 + static_cast<long double>(s), zeta);
    return m.inverse_zeta(w0 + static_cast<long double>(t), zeta);
}

cplx orbit_point(const KoenigsMap& m, cplx z, double t) {
    require_disk(z);
    if (t < 0.0) throw SpecError("orbit time must be nonnegative");
    if (t == 0.0) return z;
    const lcplx z0 = cayley(z);
    const lcplx w0 = m.forward_zeta(z0);
    lcplx zeta = z0;
    if (m.numerical_inverse())
        for (double s = std::min(t, 1.0 / 16.0); s < t; s *= 1.5)
            zeta = m.inverse_zeta(w0 + static_cast<long double>(s), zeta);
    return cayley_inverse(m.inverse_zeta(w0 + static_cast<long double>(t), zeta));
}

cplx generator_value(const KoenigsMap& m, cplx z, bool finite_difference) {
    require_disk(z);
    if (!finite_difference) {
        const lcplx zl = widen(z);
        lcplx dh = m.derivative_zeta(cayley(z)) * 2.0L * kI / ((1.0L - zl) * (1.0L - zl));
        return narrow(1.0L / dh);
    }
    auto f = [&](long double h) {
        const lcplx zl = widen(z);
        lcplx fp = m.forward_zeta(kI * (1.0L + zl + h) / (1.0L - zl - h));
        lcplx fm = m.forward_zeta(kI * (1.0L + zl - h) / (1.0L - zl + h));
        return (fp - fm) / (2.0L * h);
    };
    lcplx d1 = f(1e-6L), d2 = f(5e-7L);
    lcplx rich = (4.0L * d2 - d1) / 3.0L;
    if (std::abs(rich - d2) > 1e-5L * std::max(1.0L, std::abs(rich)))
        throw DerivativeFailure("finite-difference derivative failed the Richardson check");
    return narrow(1.0L / rich);
}

NormBounds norm_bounds_zeta(const SpaceSpec& space, lcplx zeta) {
    if (space.kind == SpaceSpec::Dirichlet) throw Unsupported("norm bounds are stated for Hardy and Bergman spaces");
    const long double e = space.kind == SpaceSpec::Hardy ? 1.0L / space.p : (2.0L + space.alpha) / space.p;
    // 1 - |z|^2 = 4 Im zeta / |zeta + i|^2 and (1+|z|)/(1-|z|) = exp(2 d).
    const long double log_inv = std::log(std::norm(zeta + kI)) - std::log(4.0L * zeta.imag());
    NormBounds nb;
    nb.log_lower = static_cast<double>(e * log_inv);
    nb.log_upper = static_cast<double>(e * 2.0L * distance_from_zeta(zeta));
    nb.lower = std::exp(nb.log_lower);
    nb.upper = std::exp(nb.log_upper);
    return nb;
}

NormBounds norm_bounds(const SpaceSpec& space, cplx phi_t_0) {
    require_disk(phi_t_0);
    return norm_bounds_zeta(space, cayley(phi_t_0));
}

double growth_type(const SpaceSpec& space, const SemigroupClass& cls) {
    if (space.kind == SpaceSpec::Dirichlet || cls.parabolic()) return 0.0;
    if (space.kind == SpaceSpec::Hardy) return cls.mu / space.p;
    return (2.0 + space.alpha) * cls.mu / space.p;
}

GrowthReport speed_check(const KoenigsMap& m, const SemigroupClass& cls, const SpaceSpec& space, double t_max,
                         bool finite_shift) {
    if (!(t_max >= 1.0)) throw SpecError("t_max must be at least 1");
    GrowthReport rep;
    rep.space = space;
    rep.omega = growth_type(space, cls);
    rep.target_ratio = cls.parabolic() ? 0.0 : 0.5 * cls.mu;
    rep.finite_shift = finite_shift;
    const double e = space.kind == SpaceSpec::Hardy ? 1.0 / space.p : (2.0 + space.alpha) / space.p;
    for (double t = 1.0; t <= t_max; t *= 2.0) {
        lcplx zeta = orbit_zeta(m, t);
        SpeedSample s;
        s.t = t;
        s.distance = static_cast<double>(distance_from_zeta(zeta));
        s.ratio = s.distance / t;
        s.log_ratio = t > 1.0 ? s.distance / std::log(t) : 0.0;
        if (space.kind != SpaceSpec::Dirichlet) {
            s.bounds = norm_bounds_zeta(space, zeta);
            const double slack = 1e-9 * std::max(1.0, s.bounds.log_upper);
            s.sandwich_ok = s.bounds.log_lower <= s.bounds.log_upper + slack &&
                            s.bounds.log_lower >= s.bounds.log_upper - e * std::log(4.0) - slack;
        }
        rep.samples.push_back(s);
        rep.spectral_radius.emplace_back(t, std::exp(rep.omega * t));
    }
    return rep;
}

} // namespace kspec
