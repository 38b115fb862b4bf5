#include "kspec/errors.hpp"
#include "kspec/geometry.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace kspec;
using kspec::test::kPi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

KoenigsDomain catalog(const CatalogShape& s) { return KoenigsDomain::from_catalog(s); }
KoenigsDomain defining(double lo, double hi, const std::string& psi) {
    return KoenigsDomain::from_defining_function({lo, hi}, parse_expr(psi));
}

GeometryOptions raw() {
    GeometryOptions o;
    o.use_closed_form = false;
    return o;
}

} // namespace

TEST(CrossSection, SigmaEpsClosedFormAndRawAgree) {
    const double eps = 0.5;
    KoenigsDomain d = catalog(CatalogShape::sigma_eps(eps));
    EXPECT_NEAR(cross_section_length(d, -1.0), 2 * std::exp(-2 * eps), 1e-12);
    EXPECT_NEAR(cross_section_length(d, 1.0), 2.0, 1e-12);
    EXPECT_NEAR(cross_section_length(d, -1.0, raw()), 2 * std::exp(-2 * eps), 1e-6);
    EXPECT_NEAR(cross_section_length(d, 1.0, raw()), 2.0, 1e-6);
    KoenigsDomain expr = defining(-1.0, 1.0, "log(abs(y))/(2*0.5)");
    EXPECT_NEAR(cross_section_length(expr, -3.0), 2 * std::exp(-3.0), 1e-6);
}

TEST(CrossSection, HalfStripIsEmptyLeftOfItsEdge) {
    KoenigsDomain d = catalog(CatalogShape::half_strip(0.0, 0.0, 1.0));
    EXPECT_EQ(cross_section_length(d, -1.0, raw()), 0.0);
    EXPECT_NEAR(cross_section_length(d, 1.0, raw()), 1.0, 1e-9);
}

TEST(CrossSection, MonotoneInX) {
    for (const KoenigsDomain& d : {defining(-1.0, 1.0, "log(abs(y))"), defining(0.0, 5.0, "sin(3*y)"),
                                   defining(0.0, 2.0, "y^2 - 1")}) {
        double prev = 0.0;
        for (double x = -4.0; x <= 4.0; x += 0.125) {
            double l = cross_section_length(d, x, raw());
            EXPECT_GE(l, prev - 1e-9) << x;
            prev = l;
        }
    }
}

TEST(CrossSection, ApproachesStripWidthOnTheRight) {
    for (const KoenigsDomain& d : {defining(-1.0, 1.0, "log(abs(y))"), defining(0.0, 3.0, "y^3"),
                                   defining(2.0, 2.5, "-inf")})
        EXPECT_NEAR(cross_section_length(d, 1e3, raw()), d.interval().width(), 1e-6);
}

TEST(TailArea, SigmaEpsIsInverseEps) {
    IntegralVerdict w = tail_area(catalog(CatalogShape::sigma_eps(0.5)));
    EXPECT_EQ(w.verdict, Verdict::Finite);
    EXPECT_NEAR(w.value, 2.0, 1e-3);
    IntegralVerdict w2 = tail_area(defining(-1.0, 1.0, "log(abs(y))/(2*0.5)"));
    EXPECT_EQ(w2.verdict, Verdict::Finite);
    EXPECT_NEAR(w2.value, 2.0, 1e-3);
}

TEST(TailArea, FullStripDivergesAndHalfStripVanishes) {
    EXPECT_EQ(tail_area(defining(0.0, 1.0, "-inf")).verdict, Verdict::Divergent);
    IntegralVerdict h = tail_area(catalog(CatalogShape::half_strip(0.0, 0.0, 1.0)));
    EXPECT_EQ(h.verdict, Verdict::Finite);
    EXPECT_EQ(h.value, 0.0);
}

TEST(DecayExponent, SigmaEpsEqualsEps) {
    DecayExponent d = decay_exponent(catalog(CatalogShape::sigma_eps(0.5)));
    EXPECT_TRUE(d.exists);
    EXPECT_NEAR(d.liminf, 0.5, 1e-2);
    EXPECT_NEAR(d.limsup, 0.5, 1e-2);
}

TEST(DecayExponent, HalfStripIsInfinite) {
    DecayExponent d = decay_exponent(catalog(CatalogShape::half_strip(0.0, 0.0, 1.0)));
    EXPECT_TRUE(d.exists);
    EXPECT_EQ(d.liminf, kInf);
}

TEST(DecayExponent, OscillatingDomainHasNoLimit) {
    DecayExponent d = decay_exponent(catalog(CatalogShape::nonexistent_delta()));
    EXPECT_FALSE(d.exists);
    EXPECT_LE(d.liminf, 0.5 + 1e-2);
    EXPECT_GE(d.limsup, 1.0 - 1e-2);
}

TEST(DefiningIntegral, SigmaEpsClosedForms) {
    KoenigsDomain d = catalog(CatalogShape::sigma_eps(0.5));
    IntegralVerdict a = defining_integral(d, -0.25);
    EXPECT_EQ(a.verdict, Verdict::Finite);
    EXPECT_NEAR(a.value, 4.0, 1e-3);
    EXPECT_EQ(defining_integral(d, -0.5).verdict, Verdict::Divergent);
}

TEST(DefiningIntegral, ConstantDefiningFunction) {
    KoenigsDomain d = catalog(CatalogShape::half_strip(0.5, 0.0, 2.0));
    for (double c : {-0.1, -1.0, -3.0}) {
        IntegralVerdict v = defining_integral(d, c);
        EXPECT_EQ(v.verdict, Verdict::Finite);
        EXPECT_NEAR(v.value, 2.0 * std::exp(2 * c * 0.5), 1e-6 * v.value);
    }
    EXPECT_THROW(defining_integral(d, 0.0), SpecError);
}

TEST(CriticalAbscissa, SigmaEps) {
    CriticalAbscissa c = critical_abscissa(catalog(CatalogShape::sigma_eps(0.5)));
    EXPECT_NEAR(c.c, -0.5, 1e-3);
    ASSERT_TRUE(c.boundary);
    EXPECT_EQ(*c.boundary, Verdict::Divergent);
    CriticalAbscissa damped = critical_abscissa(catalog(CatalogShape::sigma_eps_damped(0.5)));
    EXPECT_NEAR(damped.c, -0.5, 1e-3);
    ASSERT_TRUE(damped.boundary);
    EXPECT_EQ(*damped.boundary, Verdict::Finite);
}

TEST(CriticalAbscissa, StripAndHalfStripExtremes) {
    EXPECT_EQ(critical_abscissa(defining(0.0, 1.0, "-inf")).c, 0.0);
    EXPECT_EQ(critical_abscissa(catalog(CatalogShape::half_strip(0.0, 0.0, 1.0))).c, -kInf);
}

TEST(ArgumentProfile, CotLogHasInnerHalfAndOuterFullAperture) {
    ArgumentProfile a = argument_profile(catalog(CatalogShape::cot_log(0.5)));
    EXPECT_NEAR(a.theta(), kPi / 2, 1e-6);
    EXPECT_NEAR(a.Theta(), kPi, 1e-6);
}

TEST(ArgumentProfile, SectorReproducesItsAperture) {
    for (double t0 : {kPi / 6, kPi / 2, 0.9 * kPi}) {
        ArgumentProfile a = argument_profile(catalog(CatalogShape::sector({0.0, 0.0}, 0.0, t0)));
        EXPECT_NEAR(a.theta_plus.value, t0, 1e-9);
        EXPECT_NEAR(a.Theta_plus.value, t0, 1e-9);
        EXPECT_TRUE(a.theta_plus.attained);
        EXPECT_TRUE(a.Theta_plus.attained);
        EXPECT_EQ(a.theta_minus.value, 0.0);
        EXPECT_EQ(a.Theta_minus.value, 0.0);
    }
    ArgumentProfile s = argument_profile(catalog(CatalogShape::sector({0.0, 0.0}, -kPi / 3, kPi / 4)));
    EXPECT_NEAR(s.theta_minus.value, kPi / 3, 1e-9);
    EXPECT_NEAR(s.theta_plus.value, kPi / 4, 1e-9);
}

TEST(ArgumentProfile, ExpSymmetricHasRightAnglesOnBothSides) {
    ArgumentProfile a = argument_profile(catalog(CatalogShape::exp_symmetric()));
    for (const ArgBound& b : {a.theta_minus, a.theta_plus, a.Theta_minus, a.Theta_plus}) EXPECT_NEAR(b.value, kPi / 2, 1e-6);
    EXPECT_NEAR(a.theta(), kPi, 1e-6);
}

TEST(ArgumentProfile, ParabolaHasZeroApertures) {
    ArgumentProfile a = argument_profile(defining(0.0, kInf, "y^2"));
    EXPECT_NEAR(a.theta(), 0.0, 1e-6);
    EXPECT_NEAR(a.Theta(), 0.0, 1e-6);
}

TEST(DomainMonotonicity, NestedCatalogPairs) {
    // Inner domain first.
    const std::vector<std::pair<CatalogShape, CatalogShape>> pairs{
        {CatalogShape::sigma_eps(1.0), CatalogShape::sigma_eps(0.5)},
        {CatalogShape::half_strip(0.0, -1.0, 1.0), CatalogShape::sigma_eps(0.5)},
        {CatalogShape::sigma_eps_damped(0.5), CatalogShape::sigma_eps(0.5)}};
    for (const auto& [s1, s2] : pairs) {
        KoenigsDomain d1 = catalog(s1), d2 = catalog(s2);
        for (double x = -6.0; x <= 2.0; x += 0.5)
            EXPECT_LE(cross_section_length(d1, x), cross_section_length(d2, x) + 1e-12) << s1.name() << " " << x;
        IntegralVerdict w1 = tail_area(d1), w2 = tail_area(d2);
        EXPECT_LE(w1.value, w2.value + 1e-6);
        EXPECT_LE(critical_abscissa(d1).c, critical_abscissa(d2).c + 1e-3);
    }
}

TEST(GeometrySummary, HyperbolicFieldsPresentAndParabolicArgs) {
    GeometrySummary h = geometry_summary(catalog(CatalogShape::sigma_eps(0.5)));
    EXPECT_TRUE(h.W && h.delta && h.critical);
    EXPECT_FALSE(h.args);
    GeometrySummary p = geometry_summary(catalog(CatalogShape::cot_log(0.5)));
    EXPECT_TRUE(p.args);
    EXPECT_FALSE(p.W);
}
