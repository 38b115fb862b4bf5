#include "kspec/spectra.hpp"

#include "kspec/errors.hpp"
#include "kspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Two angles closer than this are treated as equal when choosing a theorem case.
constexpr double kCaseTol = 1e-9;

bool near(double a, double b) { return std::abs(a - b) <= kCaseTol; }

// i S(lo, hi): arguments in (pi/2 + lo, pi/2 + hi).
Primitive rotated_wedge(double lo, double hi, bool lo_closed, bool hi_closed) {
    return Primitive::wedge(kHalfPi + lo, kHalfPi + hi, lo_closed, hi_closed);
}

SpectrumRegion open_upper_wedge() { return SpectrumRegion::with_origin(rotated_wedge(0.0, kPi, false, false)); }
SpectrumRegion closed_upper_wedge() { return SpectrumRegion::with_origin(rotated_wedge(0.0, kPi, true, true)); }

SpectrumBracket make_bracket(SpectrumRegion inner, SpectrumRegion outer, std::string label) {
    SpectrumBracket b;
    b.inner = std::move(inner);
    b.outer = std::move(outer);
    b.exact = false;
    b.case_label = std::move(label);
    return b;
}

void require_sector_angles(double a, double b) {
    if (!(a < b) || a < -kPi || b > kPi || a > 0.0 || b < 0.0)
        throw SpecError("sector angles must satisfy -pi <= a <= 0 <= b <= pi with a < b");
}

} // namespace

SpaceSpec SpaceSpec::dirichlet() { return {}; }

SpaceSpec SpaceSpec::hardy(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("Hardy space needs p >= 1");
    SpaceSpec s;
    s.kind = Hardy;
    s.p = p;
    return s;
}

SpaceSpec SpaceSpec::bergman(double p, double alpha) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw SpecError("Bergman space needs p >= 1");
    if (!(alpha > -1.0) || !std::isfinite(alpha)) throw SpecError("Bergman space needs alpha > -1");
    SpaceSpec s;
    s.kind = Bergman;
    s.p = p;
    s.alpha = alpha;
    return s;
}

std::string SpaceSpec::name() const {
    switch (kind) {
    case Dirichlet: return "dirichlet";
    case Hardy: return "hardy";
    case Bergman: return "bergman";
    }
    return "?";
}

bool is_standard_shape(const CatalogShape& shape) {
    switch (shape.kind) {
    case CatalogKind::HorizontalStrip:
    case CatalogKind::HorizontalHalfStrip:
    case CatalogKind::Sector:
    case CatalogKind::UpperHalfPlane: return true;
    default: return false;
    }
}

SpectrumBracket standard_domain_spectrum(const CatalogShape& shape, const SpaceSpec& space) {
    const bool dirichlet = space.kind == SpaceSpec::Dirichlet;
    switch (shape.kind) {
    case CatalogKind::HorizontalStrip:
        if (!dirichlet) throw Unsupported("Hardy/Bergman spectra of hyperbolic domains are not implemented");
        return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "standard-strip");
    case CatalogKind::HorizontalHalfStrip:
        if (!dirichlet) throw Unsupported("Hardy/Bergman spectra of hyperbolic domains are not implemented");
        return SpectrumBracket::exact_region(open_upper_wedge(), "standard-half-strip");
    case CatalogKind::Sector:
    case CatalogKind::UpperHalfPlane: break;
    default: throw Unsupported("not a standard domain: " + shape.name());
    }
    const CatalogShape s = shape.as_sector();
    require_sector_angles(s.a, s.b);
    const double aperture = s.b - s.a;
    if (dirichlet) {
        if (aperture < kPi && !near(aperture, kPi))
            return SpectrumBracket::exact_region(
                SpectrumRegion::with_origin(rotated_wedge(-s.a, kPi - s.b, false, false)), "standard-sector-narrow");
        return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "standard-sector-wide");
    }
    if (near(aperture, kPi))
        return SpectrumBracket::exact_region(SpectrumRegion({Cell{{Primitive::half_line(kHalfPi - s.a, true)}}}),
                                             "standard-sector-half-plane");
    if (aperture < kPi)
        return SpectrumBracket::exact_region(SpectrumRegion::with_origin(rotated_wedge(-s.a, kPi - s.b, true, true)),
                                             "standard-sector-narrow");
    return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "standard-sector-wide");
}

Membership dirichlet_membership(const TailProfile& tail, cplx lambda) {
    if (lambda == cplx(0.0, 0.0)) return Membership::In;
    if (lambda.real() >= 0.0) return Membership::Out;
    IntegralVerdict v = tail.defining_integral(lambda.real());
    switch (v.verdict) {
    case Verdict::Finite: return Membership::In;
    case Verdict::Divergent: return Membership::Out;
    case Verdict::Inconclusive: break;
    }
    throw Inconclusive("defining integral inconclusive at Re lambda = " + format_number(lambda.real()) + ": " +
                       v.diagnostic);
}

Membership dirichlet_membership(const KoenigsDomain& d, cplx lambda, const GeometryOptions& opts) {
    if (lambda == cplx(0.0, 0.0)) return Membership::In;
    if (lambda.real() >= 0.0) return Membership::Out;
    return dirichlet_membership(TailProfile(d, opts), lambda);
}

SpectrumBracket dirichlet_spectrum_hyperbolic(const TailProfile& tail) {
    CriticalAbscissa ca = tail.critical_abscissa();
    SpectrumBracket out;
    if (ca.c == 0.0) {
        out = SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "critical-abscissa-zero");
    } else if (ca.c == -kInf) {
        out = SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::left_half_plane()),
                                            "critical-abscissa-infinite");
    } else if (ca.boundary == Verdict::Divergent) {
        out = SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::strip(ca.c, 0.0, false, false)),
                                            "boundary-integral-infinite");
    } else if (ca.boundary == Verdict::Finite) {
        out = SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::strip(ca.c, 0.0, true, false)),
                                            "boundary-integral-finite");
    } else {
        throw Inconclusive("defining integral inconclusive at the critical abscissa " + format_number(ca.c));
    }
    out.notes.push_back("critical abscissa " + format_number(ca.c));
    return out;
}

SpectrumBracket dirichlet_spectrum_hyperbolic(const KoenigsDomain& d, const GeometryOptions& opts) {
    return dirichlet_spectrum_hyperbolic(TailProfile(d, opts));
}

SpectrumBracket dirichlet_spectrum_hyperbolic_by_W_delta(const TailProfile& tail) {
    IntegralVerdict W = tail.tail_area();
    if (W.verdict == Verdict::Inconclusive) throw Inconclusive("tail area inconclusive: " + W.diagnostic);
    if (W.verdict == Verdict::Divergent)
        return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "tail-area-infinite");

    DecayExponent de = tail.decay_exponent();
    const double tol = tail.options().tol_delta;
    if (!de.exists) {
        auto strip_from = [](double q, bool closed) {
            if (q == kInf) return SpectrumRegion::with_origin(Primitive::left_half_plane());
            if (!(q > 0.0)) return SpectrumRegion::origin_only();
            return SpectrumRegion::with_origin(Primitive::strip(-q, 0.0, closed, false));
        };
        SpectrumBracket b = make_bracket(strip_from(de.liminf, false), strip_from(de.limsup, true),
                                         "decay-exponent-oscillates");
        b.notes.push_back("liminf " + format_number(de.liminf) + ", limsup " + format_number(de.limsup));
        return b;
    }
    if (de.value == kInf)
        return SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::left_half_plane()),
                                             "decay-exponent-infinite");
    const double delta = de.value;
    if (delta < tol) return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "decay-exponent-zero");

    const double band = std::max(tail.options().tol_c, 2.0 * (de.limsup - de.liminf));
    IntegralVerdict wi = tail.weighted_integral(delta, band);
    SpectrumBracket out;
    if (wi.verdict == Verdict::Finite) {
        out = SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::strip(-delta, 0.0, true, false)),
                                            "weighted-integral-finite");
    } else if (wi.verdict == Verdict::Divergent) {
        out = SpectrumBracket::exact_region(SpectrumRegion::with_origin(Primitive::strip(-delta, 0.0, false, false)),
                                            "weighted-integral-infinite");
    } else {
        out = make_bracket(SpectrumRegion::with_origin(Primitive::strip(-delta, 0.0, false, false)),
                           SpectrumRegion::with_origin(Primitive::strip(-delta, 0.0, true, false)),
                           "weighted-integral-undecided");
    }
    out.notes.push_back("decay exponent " + format_number(delta));
    return out;
}

SpectrumBracket dirichlet_spectrum_hyperbolic_by_W_delta(const KoenigsDomain& d, const GeometryOptions& opts) {
    return dirichlet_spectrum_hyperbolic_by_W_delta(TailProfile(d, opts));
}

SpectrumBracket dirichlet_parabolic_bracket(const ArgumentProfile& args, SemigroupClass::Kind step) {
    if (step == SemigroupClass::ParabolicPositiveStep) {
        const double th = args.theta_plus.value, Th = args.Theta_plus.value;
        if (near(th, 0.0) && near(Th, 0.0)) return SpectrumBracket::exact_region(open_upper_wedge(), "arguments-zero");
        if (near(th, kPi) && near(Th, kPi))
            return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "arguments-pi");
        if (near(th, Th))
            return make_bracket(SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, false, false)),
                                SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, false, true)),
                                "arguments-equal");
        SpectrumRegion inner = near(Th, kPi) ? SpectrumRegion::origin_only()
                                             : SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, false, false));
        SpectrumRegion outer = near(th, 0.0) ? open_upper_wedge()
                                             : SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - th, false, true));
        return make_bracket(std::move(inner), std::move(outer), "arguments-distinct");
    }
    if (step != SemigroupClass::ParabolicZeroStep) throw Unsupported("parabolic case tables need a parabolic domain");
    const double tm = args.theta_minus.value, tp = args.theta_plus.value;
    const double th = args.theta(), Th = args.Theta();
    if (th > kPi + kCaseTol)
        return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "inner-argument-above-pi");
    if (near(th, kPi))
        return make_bracket(SpectrumRegion::origin_only(),
                            SpectrumRegion({Cell{{Primitive::half_line(kHalfPi + tm, true)}}}), "inner-argument-pi");
    if (near(th, 0.0) && near(Th, 0.0)) return SpectrumBracket::exact_region(open_upper_wedge(), "arguments-zero");
    SpectrumRegion outer = near(th, 0.0) ? open_upper_wedge()
                                         : SpectrumRegion::with_origin(rotated_wedge(tm, kPi - tp, true, true));
    if (near(th, Th))
        return make_bracket(SpectrumRegion::with_origin(rotated_wedge(tm, kPi - tp, false, false)), std::move(outer),
                            "arguments-equal");
    SpectrumRegion inner =
        Th >= kPi - kCaseTol
            ? SpectrumRegion::origin_only()
            : SpectrumRegion::with_origin(
                  rotated_wedge(args.Theta_minus.value, kPi - args.Theta_plus.value, false, false));
    return make_bracket(std::move(inner), std::move(outer), "arguments-distinct");
}

SpectrumBracket hardy_bergman_parabolic_bracket(const ArgumentProfile& args, SemigroupClass::Kind step) {
    const double Tm = args.Theta_minus.value, Tp = args.Theta_plus.value;
    const bool attained = args.Theta_minus.attained && args.Theta_plus.attained;
    const double th = args.theta(), Th = args.Theta();

    if (step == SemigroupClass::ParabolicPositiveStep) {
        if (near(th, 0.0) && near(Th, 0.0))
            return make_bracket(SpectrumRegion::with_origin(rotated_wedge(0.0, kPi, true, false)),
                                closed_upper_wedge(), "arguments-zero");
        if (near(th, kPi) && near(Th, kPi))
            return SpectrumBracket::exact_region(SpectrumRegion({Cell{{Primitive::half_line(kHalfPi, true)}}}),
                                                 "arguments-pi");
        if (near(th, Th)) {
            if (attained)
                return SpectrumBracket::exact_region(
                    SpectrumRegion::with_origin(rotated_wedge(Tm, kPi - Tp, true, true)), "arguments-equal-attained");
            return make_bracket(SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, true, false)),
                                SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, true, true)),
                                "arguments-equal");
        }
        SpectrumRegion inner = near(Th, kPi)
                                   ? SpectrumRegion({Cell{{Primitive::half_line(kHalfPi, true)}}})
                                   : SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - Th, true, false));
        SpectrumRegion outer = near(th, 0.0) ? closed_upper_wedge()
                                             : SpectrumRegion::with_origin(rotated_wedge(0.0, kPi - th, true, true));
        return make_bracket(std::move(inner), std::move(outer), "arguments-distinct");
    }
    if (step != SemigroupClass::ParabolicZeroStep) throw Unsupported("parabolic case tables need a parabolic domain");
    const double tm = args.theta_minus.value, tp = args.theta_plus.value;
    if (th > kPi + kCaseTol)
        return SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "inner-argument-above-pi");
    if (near(th, kPi)) {
        if (near(Th, kPi) && attained)
            return SpectrumBracket::exact_region(SpectrumRegion({Cell{{Primitive::half_line(kHalfPi + Tm, true)}}}),
                                                 "inner-argument-pi-attained");
        return make_bracket(SpectrumRegion::origin_only(),
                            SpectrumRegion({Cell{{Primitive::half_line(kHalfPi + tm, true)}}}), "inner-argument-pi");
    }
    if (near(th, 0.0) && near(Th, 0.0))
        return make_bracket(open_upper_wedge(), closed_upper_wedge(), "arguments-zero");
    SpectrumRegion outer = near(th, 0.0) ? closed_upper_wedge()
                                         : SpectrumRegion::with_origin(rotated_wedge(tm, kPi - tp, true, true));
    if (near(th, Th)) {
        if (attained)
            return SpectrumBracket::exact_region(SpectrumRegion::with_origin(rotated_wedge(Tm, kPi - Tp, true, true)),
                                                 "arguments-equal-attained");
        return make_bracket(SpectrumRegion::with_origin(rotated_wedge(tm, kPi - tp, false, false)), std::move(outer),
                            "arguments-equal");
    }
    SpectrumRegion inner = Th >= kPi - kCaseTol
                               ? SpectrumRegion::origin_only()
                               : SpectrumRegion::with_origin(rotated_wedge(Tm, kPi - Tp, false, false));
    return make_bracket(std::move(inner), std::move(outer), "arguments-distinct");
}

namespace {

// Runs a case table on the upper normal form and maps the result back.
template <class Table>
SpectrumBracket parabolic_dispatch(const KoenigsDomain& d, const GeometryOptions& opts, Table table) {
    SemigroupClass cls = classify(d);
    if (!cls.parabolic()) throw Unsupported("parabolic case tables need a parabolic domain");
    const bool lower = cls.kind == SemigroupClass::ParabolicPositiveStep && cls.orientation == SemigroupClass::Lower;
    const KoenigsDomain u = lower ? d.reflected() : d;
    ArgumentProfile args = argument_profile(u, opts);
    SpectrumBracket b = table(args, cls.kind);
    b.notes.push_back("inner argument " + format_number(args.theta()) + ", outer argument " +
                      format_number(args.Theta()));
    if (lower) {
        b = b.conjugated();
        b.notes.push_back("lower domain reflected; spectrum conjugated back");
    }
    return b;
}

SpectrumBracket cot_log_hardy(const CatalogShape& s, const SpaceSpec& space) {
    const double x = s.param;
    Cell wedge_strip{{Primitive::wedge(kHalfPi, (1.5 - x) * kPi, true, true),
                      Primitive::strip(-1.0 / (space.p * x), 0.0, false, true)}};
    SpectrumBracket b = SpectrumBracket::exact_region(SpectrumRegion::with_origin(wedge_strip), "cot-log-hardy");
    b.notes.push_back("wedge from the argument profile cut by the strip bound for this domain");
    return b;
}

} // namespace

SpectrumBracket dirichlet_parabolic_bracket(const KoenigsDomain& d, const GeometryOptions& opts) {
    return parabolic_dispatch(d, opts, [](const ArgumentProfile& a, SemigroupClass::Kind k) {
        return dirichlet_parabolic_bracket(a, k);
    });
}

SpectrumBracket hardy_bergman_parabolic_bracket(const KoenigsDomain& d, const SpaceSpec& space, bool finite_shift,
                                                const GeometryOptions& opts) {
    if (space.kind == SpaceSpec::Dirichlet) throw SpecError("Hardy or Bergman space expected");
    if (finite_shift) {
        SemigroupClass cls = classify(d);
        if (cls.kind != SemigroupClass::ParabolicPositiveStep)
            throw SpecError("finite shift asserted for a domain that is not parabolic of positive step");
        const bool lower = cls.orientation == SemigroupClass::Lower;
        ArgumentProfile args = argument_profile(lower ? d.reflected() : d, opts);
        SpectrumBracket b =
            SpectrumBracket::exact_region(SpectrumRegion({Cell{{Primitive::half_line(kHalfPi, true)}}}), "finite-shift");
        if (!near(args.theta(), kPi))
            b.notes.push_back("warning: finite shift asserted but the computed inner argument is " +
                              format_number(args.theta()) + ", not pi");
        return lower ? b.conjugated() : b;
    }
    return parabolic_dispatch(d, opts, [](const ArgumentProfile& a, SemigroupClass::Kind k) {
        return hardy_bergman_parabolic_bracket(a, k);
    });
}

SpectrumBracket compute_spectrum(const KoenigsDomain& d, const SpaceSpec& space, bool finite_shift,
                                 const GeometryOptions& opts) {
    const bool dirichlet = space.kind == SpaceSpec::Dirichlet;
    const auto& cat = d.catalog();
    SemigroupClass cls = classify(d);
    if (finite_shift && cls.kind != SemigroupClass::ParabolicPositiveStep)
        throw SpecError("finite shift asserted for a domain that is not parabolic of positive step");
    if (cat && is_standard_shape(*cat) && !(finite_shift && !dirichlet)) {
        SpectrumBracket b = standard_domain_spectrum(*cat, space);
        if (finite_shift && dirichlet && cls.orientation == SemigroupClass::Upper) {
            // Finite shift forces both arguments to pi.
            ArgumentProfile args = argument_profile(d, opts);
            if (!near(args.theta(), kPi))
                b.notes.push_back("warning: finite shift asserted but the computed inner argument is " +
                                  format_number(args.theta()) + ", not pi");
        }
        return b;
    }
    if (cat && cat->kind == CatalogKind::CotLog && space.kind == SpaceSpec::Hardy && !finite_shift)
        return cot_log_hardy(*cat, space);

    if (cls.kind == SemigroupClass::Hyperbolic) {
        if (!dirichlet) throw Unsupported("Hardy/Bergman spectra of hyperbolic domains are not implemented");
        return dirichlet_spectrum_hyperbolic(d, opts);
    }
    if (dirichlet) {
        if (finite_shift) {
            const bool lower = cls.orientation == SemigroupClass::Lower;
            ArgumentProfile args = argument_profile(lower ? d.reflected() : d, opts);
            SpectrumBracket b = SpectrumBracket::exact_region(SpectrumRegion::origin_only(), "finite-shift");
            if (!near(args.theta(), kPi))
                b.notes.push_back("warning: finite shift asserted but the computed inner argument is " +
                                  format_number(args.theta()) + ", not pi");
            return b;
        }
        return dirichlet_parabolic_bracket(d, opts);
    }
    return hardy_bergman_parabolic_bracket(d, space, finite_shift, opts);
}

MembershipResult resolve_membership(const KoenigsDomain& d, const SpaceSpec& space, cplx lambda, bool finite_shift,
                                    const GeometryOptions& opts) {
    MembershipResult r;
    if (lambda == cplx(0.0, 0.0)) {
        r.verdict = Membership::In;
        r.source = "region";
        r.detail = "0 is always an eigenvalue";
        return r;
    }
    SemigroupClass cls = classify(d);
    const auto& cat = d.catalog();
    const bool standard = cat && is_standard_shape(*cat);
    if (cls.kind == SemigroupClass::Hyperbolic && space.kind == SpaceSpec::Dirichlet && !standard) {
        r.verdict = dirichlet_membership(d, lambda, opts);
        r.source = "defining-integral";
        return r;
    }
    SpectrumBracket b = compute_spectrum(d, space, finite_shift, opts);
    r.verdict = region_membership(b, lambda);
    r.source = "region";
    r.detail = b.case_label;
    if (r.verdict != Membership::Unknown) return r;

    const bool oracle_ok = space.kind == SpaceSpec::Dirichlet || (cat && cat->is_sector_like());
    if (!oracle_ok) return r;
    OracleResult o = area_integral_classify(d, lambda, WeightSpec::for_space(space), space.p);
    r.source = "oracle";
    r.verdict = oracle_membership(o);
    r.detail = b.case_label + "; oracle " + to_string(o.verdict) + " (" + o.diagnostic + ")";
    return r;
}

ChainReport inclusion_chain_check(const SpectrumBracket& dirichlet, const SpectrumBracket& hardy,
                                  const SpectrumBracket& bergman, const Window& w, int nx, int ny) {
    Raster rd = raster(dirichlet, w, nx, ny);
    Raster rh = raster(hardy, w, nx, ny);
    Raster rb = raster(bergman, w, nx, ny);
    ChainReport rep;
    for (int row = 0; row < ny; ++row) {
        for (int col = 0; col < nx; ++col) {
            const std::size_t i = static_cast<std::size_t>(row) * nx + col;
            const Membership md = rd.cells[i], mh = rh.cells[i], mb = rb.cells[i];
            ++rep.checked;
            bool bad = (md == Membership::In && (mh == Membership::Out || mb == Membership::Out)) ||
                       (mh == Membership::In && mb == Membership::Out);
            if (bad) rep.violations.push_back({rd.center(row, col), md, mh, mb});
        }
    }
    return rep;
}

ChainReport inclusion_chain_check(const KoenigsDomain& d, double p, double alpha, const Window& w, int nx, int ny,
                                  const GeometryOptions& opts) {
    return inclusion_chain_check(compute_spectrum(d, SpaceSpec::dirichlet(), false, opts),
                                 compute_spectrum(d, SpaceSpec::hardy(p), false, opts),
                                 compute_spectrum(d, SpaceSpec::bergman(p, alpha), false, opts), w, nx, ny);
}

} // namespace kspec
