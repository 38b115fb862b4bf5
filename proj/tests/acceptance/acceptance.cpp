// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include "../properties.hpp"

#include "kspec/conformal.hpp"
#include "kspec/oracle.hpp"
#include "kspec/report.hpp"
#include "kspec/spec_io.hpp"
#include "kspec/spectra.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace kspec;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances and budgets.
constexpr double kSymbolicTol = 1e-12;
constexpr double kBudgetStandard = 1.0;
constexpr double kTolW = 1e-3;
constexpr double kTolDelta = 1e-2;
constexpr double kTolC = 1e-3;
constexpr double kBudgetSigma = 10.0;
constexpr double kBudgetRouting = 10.0;
constexpr double kTolEngines = 1e-2;
constexpr double kTolBreakpoint = 1e-2;
constexpr double kBudgetOracle = 60.0;
constexpr double kBoundaryTol = 0.05;
constexpr double kTolSpeed = 0.02;
constexpr double kParabolicRatio = 0.02;
constexpr double kTolGreen = 1e-6;

struct Outcome {
    bool pass = true;
    std::ostringstream detail, failures;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            failures << " [" << what << "]";
        }
    }
};

LoadedSpec fixture(const std::string& name) { return load_spec(std::string(KSPEC_FIXTURES) + "/" + name); }
KoenigsDomain sector(double a, double b) { return KoenigsDomain::from_catalog(CatalogShape::sector({0, 0}, a, b)); }
SpectrumRegion ray(double direction) { return SpectrumRegion({Cell{{Primitive::half_line(direction)}}}); }
SpectrumRegion wedge0(double lo, double hi, bool closed) {
    return SpectrumRegion::with_origin(Primitive::wedge(lo, hi, closed, closed));
}

bool symbolic_edges(const SpectrumRegion& r) {
    for (const Cell& c : r.cells())
        for (const Primitive& p : c.parts) {
            if (p.kind == Primitive::ArgWedge && (!angle_symbol(p.lo) || !angle_symbol(p.hi))) return false;
            if (p.kind == Primitive::HalfLine && !angle_symbol(p.direction)) return false;
        }
    return true;
}

void exact_equal(Outcome& o, const std::string& name, const SpectrumBracket& b, const SpectrumRegion& expected,
                 double tol) {
    o.check(b.exact, name + " not exact");
    o.check(equivalent(b.inner, expected, tol), name + ": " + b.inner.describe());
}

// 1. Standard-domain spectra.
void standard_spectra(Outcome& o) {
    auto spec = [](const KoenigsDomain& d, const SpaceSpec& s) { return compute_spectrum(d, s); };
    struct Case {
        std::string name;
        SpectrumBracket got;
        SpectrumRegion want;
    };
    std::vector<Case> cases{
        {"half-strip/dirichlet", spec(KoenigsDomain::from_catalog(CatalogShape::half_strip(0, 0, 1)), SpaceSpec::dirichlet()),
         wedge0(kPi / 2, 3 * kPi / 2, false)},
        {"strip/dirichlet", spec(KoenigsDomain::from_catalog(CatalogShape::strip(0, kPi)), SpaceSpec::dirichlet()),
         SpectrumRegion::origin_only()},
        {"sector/dirichlet", spec(sector(-kPi / 4, kPi / 4), SpaceSpec::dirichlet()), wedge0(3 * kPi / 4, 5 * kPi / 4, false)},
        {"sector/bergman", spec(sector(-kPi / 4, kPi / 4), SpaceSpec::bergman(2, 0)), wedge0(3 * kPi / 4, 5 * kPi / 4, true)},
        {"sector/hardy", spec(sector(-kPi / 4, kPi / 4), SpaceSpec::hardy(2)), wedge0(3 * kPi / 4, 5 * kPi / 4, true)},
        {"aperture-pi/hardy", spec(sector(-kPi / 2, kPi / 2), SpaceSpec::hardy(2)),
         ray(kPi)},
        {"upper-half-plane/hardy", spec(KoenigsDomain::from_catalog(CatalogShape::upper_half_plane()), SpaceSpec::hardy(2)),
         ray(kPi / 2)},
        {"aperture-3pi/2/hardy", spec(sector(-3 * kPi / 4, 3 * kPi / 4), SpaceSpec::hardy(2)), SpectrumRegion::origin_only()},
    };
    for (const Case& c : cases) {
        exact_equal(o, c.name, c.got, c.want, kSymbolicTol);
        o.check(symbolic_edges(c.got.inner), c.name + " edges not multiples of pi/24");
    }
    o.detail << cases.size() << " regions";
}

// 2. Sigma-eps fixtures.
void sigma_eps(Outcome& o) {
    LoadedSpec s = fixture("sigma_eps.json");
    GeometrySummary g = geometry_summary(s.domain, s.geometry);
    o.check(g.W && g.W->verdict == Verdict::Finite && std::abs(g.W->value - 2.0) <= kTolW, "W");
    o.check(g.delta && g.delta->exists && std::abs(g.delta->value - 0.5) <= kTolDelta, "delta");
    o.check(g.critical && std::abs(g.critical->c + 0.5) <= kTolC, "c");
    o.check(g.critical && g.critical->boundary == Verdict::Divergent, "boundary integral");
    exact_equal(o, "sigma-eps", compute_spectrum(s.domain, SpaceSpec::dirichlet()),
                SpectrumRegion::with_origin(Primitive::strip(-0.5, 0, false, false)), kTolC);

    LoadedSpec d = fixture("sigma_eps_damped.json");
    GeometrySummary gd = geometry_summary(d.domain, d.geometry);
    o.check(gd.critical && std::abs(gd.critical->c + 0.5) <= kTolC, "damped c");
    o.check(gd.critical && gd.critical->boundary == Verdict::Finite, "damped boundary integral");
    exact_equal(o, "damped", compute_spectrum(d.domain, SpaceSpec::dirichlet()),
                SpectrumRegion::with_origin(Primitive::strip(-0.5, 0, true, false)), kTolC);
    if (g.W && g.delta && g.critical)
        o.detail << "W=" << g.W->value << " delta=" << g.delta->value << " c=" << g.critical->c;
}

// Consistency of two results on a probe line: exact regions agree, brackets contain the exact region.
bool engines_agree(const SpectrumBracket& a, const SpectrumBracket& b) {
    std::vector<cplx> probes{{0.0, 0.0}};
    for (int i = 0; i <= 320; ++i) probes.push_back({-3.0 + 0.01 * i, 0.7});
    for (cplx z : probes) {
        Membership ma = region_membership(a, z), mb = region_membership(b, z);
        if (ma == Membership::Unknown || mb == Membership::Unknown || ma == mb) continue;
        double dist = std::min({a.inner.boundary_distance(z), a.outer.boundary_distance(z),
                                b.inner.boundary_distance(z), b.outer.boundary_distance(z)});
        if (dist > kTolEngines) return false;
    }
    return true;
}

// 3. Hyperbolic routing through the tail engine and agreement of both engines.
void routing(Outcome& o) {
    struct Route {
        std::string file, label;
        SpectrumRegion want;
    };
    std::vector<Route> routes{{"strip.json", "tail-area-infinite", SpectrumRegion::origin_only()},
                              {"half_strip.json", "decay-exponent-infinite",
                               SpectrumRegion::with_origin(Primitive::left_half_plane())},
                              {"sigma_eps.json", "weighted-integral-infinite",
                               SpectrumRegion::with_origin(Primitive::strip(-0.5, 0, false, false))}};
    for (const Route& r : routes) {
        LoadedSpec s = fixture(r.file);
        SpectrumBracket b = dirichlet_spectrum_hyperbolic_by_W_delta(s.domain, s.geometry);
        o.check(b.case_label == r.label, r.file + " routed to " + b.case_label);
        exact_equal(o, r.file, b, r.want, kTolEngines);
    }
    int fixtures = 0;
    for (const std::string& f : props::fixture_names()) {
        LoadedSpec s = fixture(f);
        if (classify(s.domain).kind != SemigroupClass::Hyperbolic) continue;
        ++fixtures;
        SpectrumBracket a = dirichlet_spectrum_hyperbolic(s.domain, s.geometry);
        SpectrumBracket b = dirichlet_spectrum_hyperbolic_by_W_delta(s.domain, s.geometry);
        o.check(engines_agree(a, b), f + ": " + a.case_label + " vs " + b.case_label);
    }
    o.detail << fixtures << " hyperbolic fixtures compared";
}

// 4. Disconnected spectrum of {x > 0, |y| < e^x}.
void disconnected(Outcome& o) {
    LoadedSpec s = fixture("exp_symmetric.json");
    auto member = [&](cplx l) { return resolve_membership(s.domain, SpaceSpec::dirichlet(), l, false, s.geometry); };
    SpectrumBracket b = compute_spectrum(s.domain, SpaceSpec::dirichlet());
    MembershipResult m04 = member({-0.4, 0});
    o.check(region_membership(b, {-0.4, 0}) == Membership::Unknown, "bracket decides -0.4");
    o.check(m04.verdict == Membership::Out && m04.source == "oracle", "-0.4");
    o.check(member({-0.6, 0}).verdict == Membership::In, "-0.6");
    o.check(member({-0.6, 0.1}).verdict == Membership::Out, "-0.6+0.1i");
    int correct = 0;
    for (int k = 0; k <= 20; ++k) {
        double l = -1.0 + 0.05 * k;
        Membership want = (l < -0.5 - 1e-12 || k == 20) ? Membership::In : Membership::Out;
        Membership got = member({l, 0}).verdict;
        if (got == want || std::abs(l + 0.5) <= kTolBreakpoint)
            ++correct;
        else
            o.check(false, "probe " + std::to_string(l) + " -> " + to_string(got));
    }
    // Breakpoint: In at and below -0.5 - tol, Out at and above -0.5 + tol.
    o.check(member({-0.5 - kTolBreakpoint, 0}).verdict == Membership::In, "breakpoint lower side");
    o.check(member({-0.5 + kTolBreakpoint, 0}).verdict == Membership::Out, "breakpoint upper side");
    o.detail << correct << "/21 real-axis probes";
}

// 5. exp-upper fixture.
void exp_upper(Outcome& o) {
    LoadedSpec s = fixture("exp_upper.json");
    std::vector<std::pair<cplx, Membership>> probes;
    for (double a : {0.55 * kPi, 0.7 * kPi, 0.85 * kPi})
        for (double r : {0.3, 1.0, 2.5}) probes.push_back({std::polar(r, a), Membership::In});
    for (double l : {-0.1, -0.2, -0.35, -0.5, -0.65, -0.8, -0.9, -0.95}) probes.push_back({{l, 0}, Membership::Out});
    for (double l : {-1.05, -1.1, -1.25, -1.5, -2.0, -2.5, -3.0, -4.0}) probes.push_back({{l, 0}, Membership::In});
    int correct = 0;
    for (const auto& [l, want] : probes) {
        Membership got = resolve_membership(s.domain, SpaceSpec::dirichlet(), l, false, s.geometry).verdict;
        if (got == want)
            ++correct;
        else
            o.check(false, "probe " + std::to_string(l.real()) + "," + std::to_string(l.imag()));
    }
    o.detail << correct << "/" << probes.size() << " probes";
}

// 6. cot-log fixture with Hardy p = 2.
void cot_log(Outcome& o) {
    LoadedSpec s = fixture("cot_log.json");
    SpectrumBracket b = compute_spectrum(s.domain, SpaceSpec::hardy(2));
    o.check(region_membership(b, {-0.3, 0.5}) == Membership::In, "-0.3+0.5i");
    o.check(region_membership(b, {-1.2, 0.5}) == Membership::Out, "-1.2+0.5i");
    o.check(region_membership(b, {-0.3, -0.5}) == Membership::Out, "-0.3-0.5i");
    o.detail << b.case_label;
}

// 7. Oracle agreement.
void oracle_agreement(Outcome& o) {
    OracleOptions opts;
    opts.boundary_tol = kBoundaryTol;
    struct Run {
        std::string name;
        KoenigsDomain d;
        SpaceSpec space;
    };
    std::vector<Run> runs{{"sector S(0,pi/2)/dirichlet", sector(0, kPi / 2), SpaceSpec::dirichlet()},
                          {"half-strip/dirichlet", fixture("half_strip.json").domain, SpaceSpec::dirichlet()},
                          {"sector S(-pi/4,pi/4)/bergman", sector(-kPi / 4, kPi / 4), SpaceSpec::bergman(2, 0)}};
    for (const Run& r : runs) {
        AgreementReport rep =
            oracle_vs_theorem(r.d, r.space, compute_spectrum(r.d, r.space), {-2, 0, -2, 2}, 11, 11, opts);
        o.check(rep.unexcused == 0, r.name + ": " + std::to_string(rep.unexcused) + " unexcused");
        o.detail << r.name << " " << rep.agreements << "+" << rep.excused << "/121; ";
    }
}

// 8. Property suites.
void property_suites(Outcome& o) {
    auto brackets = props::all_fixture_brackets(KSPEC_FIXTURES);
    auto report = [&](const std::string& name, const props::Tally& t) {
        o.check(t.ok(), name + ": " + std::to_string(t.violations.size()) + " violations");
        o.detail << name << " " << t.checks << " checks; ";
    };
    report("starlike", props::starlikeness(brackets));
    report("vertical", props::vertical_convexity(brackets));
    report("chain", props::inclusion_chain(props::chain_sectors()));
    report("monotone", props::domain_monotonicity(props::nested_sector_pairs()));
}

// 9. Growth.
void growth(Outcome& o) {
    const CatalogShape strip = CatalogShape::strip(0, kPi);
    GrowthReport g = speed_check(koenigs_catalog(strip), classify(KoenigsDomain::from_catalog(strip)),
                                 SpaceSpec::hardy(2), 1024.0);
    o.check(g.omega == 0.5, "omega");
    o.check(!g.samples.empty() && g.samples.back().t == 1024.0 &&
                std::abs(g.samples.back().ratio - 0.5) <= kTolSpeed * 0.5,
            "strip speed");
    for (const SpeedSample& s : g.samples) o.check(s.sandwich_ok, "strip sandwich at t=" + std::to_string(s.t));

    const CatalogShape uhp = CatalogShape::upper_half_plane();
    GrowthReport p =
        speed_check(koenigs_catalog(uhp), classify(KoenigsDomain::from_catalog(uhp)), SpaceSpec::hardy(2), 1024.0);
    o.check(!p.samples.empty() && p.samples.back().ratio < kParabolicRatio, "parabolic speed");
    for (const SpeedSample& s : p.samples) o.check(s.sandwich_ok, "parabolic sandwich at t=" + std::to_string(s.t));

    double worst = 0.0;
    for (double alpha : {1.0, 2.0, 0.75}) {
        KoenigsMap m = koenigs_catalog(CatalogShape::sector({0, 0}, -kPi / (2 * alpha), kPi / (2 * alpha)));
        for (cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.4), cplx(0.1, -0.7)})
            worst = std::max(worst, std::abs(green_sector(alpha, m.forward({0, 0}), m.forward(z)) + std::log(std::abs(z))));
    }
    o.check(worst <= kTolGreen, "green invariance");
    for (cplx z : {cplx(2, 0.3), cplx(0.5, -0.1), cplx(3, 1)})
        o.check(green_sector(2.0, {1, 0}, z) <= green_sector(1.0, {1, 0}, z) + kTolGreen, "green monotonicity");
    if (!g.samples.empty() && !p.samples.empty())
        o.detail << "strip ratio " << g.samples.back().ratio << ", parabolic ratio " << p.samples.back().ratio
                 << ", green error " << worst;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        double budget; // seconds, 0 when unbudgeted
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "standard-domain spectra", kBudgetStandard, standard_spectra},
        {2, "sigma-eps fixtures", kBudgetSigma, sigma_eps},
        {3, "hyperbolic routing and engine agreement", kBudgetRouting, routing},
        {4, "disconnected spectrum", 0.0, disconnected},
        {5, "exp-upper fixture", 0.0, exp_upper},
        {6, "cot-log Hardy region", 0.0, cot_log},
        {7, "oracle agreement", kBudgetOracle, oracle_agreement},
        {8, "property suites", 0.0, property_suites},
        {9, "growth", 0.0, growth},
    };
    int failures = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && secs > c.budget) o.check(false, "over budget " + std::to_string(c.budget) + " s");
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %d %s (%.2f s): %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.str().c_str(), o.failures.str().c_str());
    }
    return failures == 0 ? 0 : 1;
}
