#pragma once

#include "kspec/domain.hpp"
#include "kspec/numerics.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace kspec {

struct GeometryOptions {
    double tol_measure = 1e-6;
    double tol_delta = 1e-2;
    double tol_c = 1e-3;
    int K = 40;
    // Use the closed-form cross-section of catalog shapes when one exists.
    bool use_closed_form = true;
};

// Measures {y in I : psi(y) < x} from a cached, refined ordinate grid.
class CrossSection {
public:
    explicit CrossSection(const KoenigsDomain& d, double tol_measure = 1e-6);

    struct Section {
        std::vector<std::pair<double, double>> intervals;
        // False once an interval is narrower than the representable resolution,
        // or the section may have closed below the refined grid minimum.
        bool resolved = true;
    };
    Section section(double x) const;
    double length(double x) const;
    // log of the length, -inf for an empty section, nullopt when unresolved.
    std::optional<double> log_length(double x) const;

private:
    double transition(std::size_t i, double x) const;

    KoenigsDomain d_;
    double tol_;
    std::vector<double> ys_, psi_;
    double min_psi_ = 0.0;
    bool sharp_min_ = false;
};

double cross_section_length(const KoenigsDomain& d, double x, const GeometryOptions& opts = {});

struct DecayExponent {
    double liminf = 0.0;
    double limsup = 0.0;
    bool exists = false;
    // q at the deepest resolved grid point.
    double value = 0.0;
    std::vector<std::pair<double, double>> samples; // (x, q(x))
};

struct CriticalAbscissa {
    double c = 0.0;
    // Defining integral at c itself; nullopt when c is 0 or -inf.
    std::optional<Verdict> boundary;
};

// Left-tail data of a hyperbolic domain, shared by W, delta, c and the weighted integral.
class TailProfile {
public:
    explicit TailProfile(const KoenigsDomain& d, const GeometryOptions& opts = {});

    // nullopt when the cross-section cannot be resolved at x.
    std::optional<double> log_ell(double x) const;

    IntegralVerdict tail_area() const;
    DecayExponent decay_exponent() const;
    // int_I exp(2 c psi(y)) dy for c < 0.
    IntegralVerdict defining_integral(double c, bool force_band = false) const;
    CriticalAbscissa critical_abscissa() const;
    // int_{-inf}^0 exp(-2 delta x) ell(x) dx.
    IntegralVerdict weighted_integral(double delta, double band) const;

    double resolved_depth() const { return depth_; }
    const KoenigsDomain& domain() const { return d_; }
    const GeometryOptions& options() const { return opts_; }
    std::vector<std::pair<double, double>> ell_samples() const;

private:
    struct Node {
        double x, w, wg, log_ell;
    };
    struct Shell {
        std::vector<Node> nodes;
    };
    // Integral of exp(beta x) ell(x) over x < 0 with exponent-fit tail verdict.
    IntegralVerdict left_exp_integral(double beta, double band, bool force_band) const;

    KoenigsDomain d_;
    GeometryOptions opts_;
    std::optional<CrossSection> cs_;
    Shell core_left_, core_right_;
    std::vector<Shell> left_, right_; // left_[k] covers [-2^{k+1}, -2^k]
    double depth_ = 1.0;              // outer edge of the last resolved left shell
    double width_ = 0.0;
};

IntegralVerdict tail_area(const KoenigsDomain& d, const GeometryOptions& opts = {});
DecayExponent decay_exponent(const KoenigsDomain& d, const GeometryOptions& opts = {});
IntegralVerdict defining_integral(const KoenigsDomain& d, double c, const GeometryOptions& opts = {});
CriticalAbscissa critical_abscissa(const KoenigsDomain& d, const GeometryOptions& opts = {});

struct ArgBound {
    double value = 0.0;
    bool attained = false;
};

struct ArgumentProfile {
    ArgBound theta_minus, theta_plus, Theta_minus, Theta_plus;
    double theta() const { return theta_minus.value + theta_plus.value; }
    double Theta() const { return Theta_minus.value + Theta_plus.value; }
};

ArgumentProfile argument_profile(const KoenigsDomain& d, const GeometryOptions& opts = {});

struct GeometrySummary {
    SemigroupClass cls;
    std::vector<std::pair<double, double>> ell_samples;
    std::optional<IntegralVerdict> W;
    std::optional<DecayExponent> delta;
    std::optional<CriticalAbscissa> critical;
    std::optional<ArgumentProfile> args;
};

GeometrySummary geometry_summary(const KoenigsDomain& d, const GeometryOptions& opts = {});

} // namespace kspec
