#include "kspec/geometry.hpp"

#include "kspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr int kPanelsPerShell = 8;
constexpr int kCorePanels = 32;
constexpr int kMaxPanelDepth = 30;
constexpr int kOctaveSubdivisions = 128;

double safe_exp(double log_value, double shift = 0.0) {
    return log_value == -kInf ? 0.0 : std::exp(log_value + shift);
}

} // namespace

TailProfile::TailProfile(const KoenigsDomain& d, const GeometryOptions& opts) : d_(d), opts_(opts) {
    if (classify(d).kind != SemigroupClass::Hyperbolic)
        throw Unsupported("tail geometry requires a hyperbolic domain (bounded defining interval)");
    if (!(opts.K >= 4 && opts.K <= 60)) throw SpecError("K must lie in [4, 60]");
    width_ = d.interval().width();
    if (!(opts.use_closed_form && d.has_closed_log_ell())) cs_.emplace(d, opts.tol_measure);

    auto add_panel = [this](auto&& self, Shell& sh, double a, double b, int depth) -> bool {
        PanelRule r = kronrod_panel(a, b);
        std::vector<double> le(r.nodes.size());
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            auto v = log_ell(r.nodes[i]);
            if (!v) return false;
            le[i] = *v;
        }
        double K = 0.0, G = 0.0;
        for (std::size_t i = 0; i < le.size(); ++i) {
            double e = safe_exp(le[i]);
            K += r.weights[i] * e;
            G += r.gauss_weights[i] * e;
        }
        if (depth < kMaxPanelDepth && std::abs(K - G) > 1e-12 * std::max(1.0, b - a)) {
            double m = 0.5 * (a + b);
            return self(self, sh, a, m, depth + 1) && self(self, sh, m, b, depth + 1);
        }
        for (std::size_t i = 0; i < le.size(); ++i)
            sh.nodes.push_back({r.nodes[i], r.weights[i], r.gauss_weights[i], le[i]});
        return true;
    };
    auto fill = [&](Shell& sh, double a, double b, int panels) {
        const double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i)
            if (!add_panel(add_panel, sh, a + h * i, i + 1 == panels ? b : a + h * (i + 1), 0)) return false;
        return true;
    };

    if (!fill(core_left_, -1.0, 0.0, kCorePanels)) {
        depth_ = 0.0;
    } else {
        depth_ = 1.0;
        for (int k = 0; k < opts.K + 2; ++k) {
            Shell sh;
            double inner = std::ldexp(1.0, k);
            if (!fill(sh, -2.0 * inner, -inner, kPanelsPerShell)) break;
            left_.push_back(std::move(sh));
            depth_ = 2.0 * inner;
        }
    }
    if (!fill(core_right_, 0.0, 1.0, kCorePanels))
        throw MeasureTolerance("cross-section unresolved on [0, 1]");
    for (int k = 0; k < opts.K + 2; ++k) {
        Shell sh;
        double inner = std::ldexp(1.0, k);
        if (!fill(sh, inner, 2.0 * inner, kPanelsPerShell)) break;
        right_.push_back(std::move(sh));
    }
}

std::optional<double> TailProfile::log_ell(double x) const {
    if (cs_) return cs_->log_length(x);
    return d_.closed_log_ell(x);
}

std::vector<std::pair<double, double>> TailProfile::ell_samples() const {
    std::vector<std::pair<double, double>> out;
    for (int j = 12; j >= -4; --j) {
        double x = -std::ldexp(1.0, j);
        if (-x > depth_) continue;
        if (auto v = log_ell(x)) out.emplace_back(x, safe_exp(*v));
    }
    for (int j = -4; j <= 12; ++j) {
        double x = j == -4 ? 0.0 : std::ldexp(1.0, j);
        if (auto v = log_ell(x)) out.emplace_back(x, safe_exp(*v));
    }
    return out;
}

IntegralVerdict TailProfile::tail_area() const {
    IntegralVerdict r;
    if (depth_ < 1.0) {
        r.diagnostic = "cross-section unresolved near x = 0";
        return r;
    }
    std::vector<double> inc;
    double total = 0.0;
    auto add = [&](const Shell& sh) {
        double s = 0.0;
        for (const Node& n : sh.nodes) s += n.w * safe_exp(n.log_ell);
        inc.push_back(s);
        total += s;
    };
    add(core_left_);
    for (std::size_t k = 0; k < left_.size(); ++k) {
        add(left_[k]);
        Verdict v = classify_running(inc, total, k + 1 == left_.size());
        if (v != Verdict::Inconclusive) {
            r.verdict = v;
            r.value = v == Verdict::Finite ? total : kInf;
            r.diagnostic = "decided after " + std::to_string(inc.size()) + " truncations";
            return r;
        }
    }
    r.value = total;
    r.diagnostic = left_.size() < static_cast<std::size_t>(opts_.K + 2)
                       ? "cross-section unresolved beyond x = -" + format_number(depth_)
                       : "no verdict at maximum depth";
    return r;
}

DecayExponent TailProfile::decay_exponent() const {
    DecayExponent out;
    double deepest_k = -1.0;
    for (int k = 0; k <= opts_.K; ++k) {
        bool stop = false;
        for (int j = 0; j < (k == opts_.K ? 1 : kOctaveSubdivisions); ++j) {
            double e = k + static_cast<double>(j) / kOctaveSubdivisions;
            double x = -std::exp2(e);
            auto v = log_ell(x);
            if (!v) {
                stop = true;
                break;
            }
            double q = *v == -kInf ? kInf : *v / (2.0 * x) + 0.0;
            out.samples.emplace_back(x, q);
            deepest_k = e;
        }
        if (stop) break;
    }
    if (out.samples.empty() || deepest_k < 3.0)
        throw Inconclusive("cross-section unresolved before the decay exponent tail");
    const double tail_start = -std::exp2(std::max(0.0, std::floor(deepest_k) - 3.0));
    out.liminf = kInf;
    out.limsup = -kInf;
    for (const auto& [x, q] : out.samples) {
        if (x > tail_start) continue;
        out.liminf = std::min(out.liminf, q);
        out.limsup = std::max(out.limsup, q);
    }
    out.value = out.samples.back().second;
    out.exists = (out.liminf == kInf && out.limsup == kInf) || (out.limsup - out.liminf < opts_.tol_delta);
    return out;
}

IntegralVerdict TailProfile::left_exp_integral(double beta, double band, bool force_band) const {
    IntegralVerdict r;
    if (left_.size() < 3) {
        r.diagnostic = "cross-section unresolved beyond x = -" + format_number(depth_);
        return r;
    }
    auto partial = [&](double b) {
        double sum = 0.0;
        auto add = [&](const Shell& sh) {
            for (const Node& n : sh.nodes) sum += n.w * safe_exp(n.log_ell, b * n.x);
        };
        add(core_left_);
        for (const Shell& sh : left_) add(sh);
        return sum;
    };
    double sum = partial(beta);

    const double U = depth_;
    auto L = [&](double u) {
        double le = *log_ell(-u);
        return le == -kInf ? -kInf : le - beta * u;
    };
    double L1 = L(U / 4), L2 = L(U / 2), L3 = L(U);
    if (L3 == -kInf) {
        r.verdict = Verdict::Finite;
        r.value = sum;
        r.diagnostic = "cross-section vanishes on the tail";
        return r;
    }
    ExponentFit fit = fit_exponent(L1, L2, L3, U);
    r.verdict = classify_fit(fit, band, force_band);
    r.diagnostic = "tail fit kappa = " + format_number(fit.kappa) + ", p = " + format_number(fit.p) +
                   " at depth " + format_number(U);
    if (r.verdict == Verdict::Finite) {
        if (fit.kappa > band && !force_band) {
            r.value = sum + std::exp(L3) / fit.kappa;
        } else {
            // Exponent within the band counts as zero; drop the fitted drift before summing.
            r.value = partial(beta - fit.kappa) + std::exp(L3 + fit.kappa * U) * U / (fit.p - 1.0);
        }
    } else if (r.verdict == Verdict::Divergent) {
        r.value = kInf;
    } else {
        r.value = sum;
    }
    if (r.verdict == Verdict::Finite && (!std::isfinite(r.value) || r.value > 1e12)) {
        r.verdict = Verdict::Divergent;
        r.value = kInf;
    }
    return r;
}

IntegralVerdict TailProfile::defining_integral(double c, bool force_band) const {
    if (!(c < 0.0)) throw SpecError("defining integral requires c < 0");
    IntegralVerdict left = left_exp_integral(2.0 * c, opts_.tol_c, force_band);
    if (left.verdict != Verdict::Finite) return left;
    double right = 0.0;
    for (const Node& n : core_right_.nodes) right += n.w * safe_exp(n.log_ell, 2.0 * c * n.x);
    double X = 1.0;
    for (const Shell& sh : right_) {
        for (const Node& n : sh.nodes) right += n.w * safe_exp(n.log_ell, 2.0 * c * n.x);
        X *= 2.0;
    }
    if (auto le = log_ell(X)) right += safe_exp(*le, 2.0 * c * X) / (-2.0 * c);
    IntegralVerdict r = left;
    r.value = -2.0 * c * (left.value + right);
    if (!std::isfinite(r.value) || r.value > 1e12) {
        r.verdict = Verdict::Divergent;
        r.value = kInf;
    }
    return r;
}

IntegralVerdict TailProfile::weighted_integral(double delta, double band) const {
    return left_exp_integral(-2.0 * delta, band, false);
}

CriticalAbscissa TailProfile::critical_abscissa() const {
    auto feasible = [this](double c) {
        IntegralVerdict v = defining_integral(c);
        if (v.verdict == Verdict::Inconclusive)
            throw Inconclusive("defining integral inconclusive at c = " + format_number(c) + ": " + v.diagnostic);
        return v.verdict == Verdict::Finite;
    };
    CriticalAbscissa out;
    const int K = opts_.K;
    if (feasible(-std::ldexp(1.0, K))) {
        out.c = -kInf;
        return out;
    }
    if (!feasible(-std::ldexp(1.0, -K))) {
        out.c = 0.0;
        return out;
    }
    // Infeasible at -2^e_lo, feasible at -2^e_hi.
    double e_lo = K, e_hi = -K;
    while (e_lo - e_hi > 1.0) {
        double m = std::floor(0.5 * (e_lo + e_hi));
        if (m == e_lo || m == e_hi) break;
        if (feasible(-std::exp2(m)))
            e_hi = m;
        else
            e_lo = m;
    }
    double a = -std::exp2(e_lo), b = -std::exp2(e_hi);
    while (b - a > 0.25 * opts_.tol_c) {
        double m = 0.5 * (a + b);
        if (feasible(m))
            b = m;
        else
            a = m;
    }
    double c = b;
    const double U = depth_;
    auto L = [&](double u) { return *log_ell(-u) - 2.0 * c * u; };
    if (left_.size() >= 3) {
        double L3 = L(U);
        if (L3 != -kInf) {
            ExponentFit fit = fit_exponent(L(U / 4), L(U / 2), L3, U);
            if (std::abs(0.5 * fit.kappa) <= opts_.tol_c) c -= 0.5 * fit.kappa;
        }
    }
    out.c = std::min(c, -std::ldexp(1.0, -K));
    out.boundary = defining_integral(out.c, true).verdict;
    return out;
}

IntegralVerdict tail_area(const KoenigsDomain& d, const GeometryOptions& opts) {
    return TailProfile(d, opts).tail_area();
}

DecayExponent decay_exponent(const KoenigsDomain& d, const GeometryOptions& opts) {
    return TailProfile(d, opts).decay_exponent();
}

IntegralVerdict defining_integral(const KoenigsDomain& d, double c, const GeometryOptions& opts) {
    return TailProfile(d, opts).defining_integral(c);
}

CriticalAbscissa critical_abscissa(const KoenigsDomain& d, const GeometryOptions& opts) {
    return TailProfile(d, opts).critical_abscissa();
}

// ---------------------------------------------------------------------------
// Argument profile

namespace {

constexpr double kSlopeTol = 1e-2;
constexpr int kTailLevels = 40;
constexpr int kAttainLevels = 30;

using Psi = std::function<double(double)>;

double eval_psi(const Psi& psi, double y) {
    try {
        return psi(y);
    } catch (const UndefinedValue&) {
        return kInf;
    }
}

bool last_increments_all(const std::vector<double>& v, bool above, double tol) {
    const std::size_t n = v.size();
    if (n < 4) return false;
    for (std::size_t i = n - 3; i < n; ++i) {
        double inc = v[i] - v[i - 1];
        if (std::isnan(inc)) return false;
        if (above ? !(inc > tol) : !(inc < -tol)) return false;
    }
    return true;
}

// psi restricted to (base, inf).
struct Component {
    Psi psi;
    double base;
};

bool tail_is_minus_inf(const Component& c, int levels) {
    for (int j = levels - 2; j <= levels; ++j)
        if (eval_psi(c.psi, c.base + std::ldexp(1.0, j)) != -kInf) return false;
    return true;
}

bool inner_feasible(const Component& c, double theta, int levels) {
    if (theta >= kPi) return tail_is_minus_inf(c, levels);
    const double cot = 1.0 / std::tan(theta);
    std::vector<double> F;
    for (int j = 0; j <= levels; ++j) {
        double t = std::ldexp(1.0, j);
        double v = eval_psi(c.psi, c.base + t);
        F.push_back(v == -kInf ? -kInf : v - t * cot);
    }
    return !last_increments_all(F, true, kSlopeTol);
}

bool outer_feasible(const Component& c, double theta, int levels) {
    if (theta >= kPi) return true;
    const double cot = 1.0 / std::tan(theta);
    for (double y : sample_ordinates(Interval{c.base, kInf}, 257))
        if (eval_psi(c.psi, y) == -kInf) return false;
    std::vector<double> G, E;
    for (int j = 0; j <= levels; ++j) {
        double t = std::ldexp(1.0, j);
        double v = eval_psi(c.psi, c.base + t);
        if (v == -kInf) return false;
        G.push_back(v - t * cot);
        double s = std::ldexp(1.0, -j);
        double ve = eval_psi(c.psi, c.base + s);
        if (ve == -kInf) return false;
        E.push_back(ve - s * cot);
    }
    return !last_increments_all(G, false, kSlopeTol) && !last_increments_all(E, false, kSlopeTol);
}

std::pair<ArgBound, ArgBound> component_arguments(const Component& c) {
    ArgBound inner, outer;
    if (inner_feasible(c, kPi, kTailLevels)) {
        inner = {kPi, true};
    } else {
        double lo = 0.0, hi = kPi;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            double m = 0.5 * (lo + hi);
            if (inner_feasible(c, m, kTailLevels))
                lo = m;
            else
                hi = m;
        }
        if (lo < 1e-12)
            inner = {0.0, true};
        else
            inner = {lo, inner_feasible(c, lo, kAttainLevels)};
    }
    {
        double lo = 0.0, hi = kPi;
        for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
            double m = 0.5 * (lo + hi);
            if (outer_feasible(c, m, kTailLevels))
                hi = m;
            else
                lo = m;
        }
        if (kPi - hi < 1e-12)
            outer = {kPi, true};
        else
            outer = {hi, outer_feasible(c, hi, kAttainLevels)};
    }
    if (inner.value > outer.value) inner.value = outer.value;
    return {inner, outer};
}

} // namespace

ArgumentProfile argument_profile(const KoenigsDomain& d, const GeometryOptions&) {
    SemigroupClass cls = classify(d);
    if (!cls.parabolic()) throw Unsupported("argument profile requires a parabolic domain");
    ArgumentProfile out;
    const ArgBound zero{0.0, true};
    if (cls.kind == SemigroupClass::ParabolicPositiveStep) {
        const bool lower = cls.orientation == SemigroupClass::Lower;
        KoenigsDomain u = lower ? d.reflected() : d;
        Component c{[u](double y) { return u.psi(y); }, u.interval().lo};
        auto [inner, outer] = component_arguments(c);
        if (lower) {
            out.theta_minus = inner;
            out.Theta_minus = outer;
            out.theta_plus = out.Theta_plus = zero;
        } else {
            out.theta_plus = inner;
            out.Theta_plus = outer;
            out.theta_minus = out.Theta_minus = zero;
        }
        return out;
    }
    Component up{[d](double y) { return d.psi(y); }, 0.0};
    Component down{[d](double y) { return d.psi(-y); }, 0.0};
    std::tie(out.theta_plus, out.Theta_plus) = component_arguments(up);
    std::tie(out.theta_minus, out.Theta_minus) = component_arguments(down);
    return out;
}

GeometrySummary geometry_summary(const KoenigsDomain& d, const GeometryOptions& opts) {
    GeometrySummary s;
    s.cls = classify(d);
    if (s.cls.kind == SemigroupClass::Hyperbolic) {
        TailProfile tp(d, opts);
        s.ell_samples = tp.ell_samples();
        s.W = tp.tail_area();
        s.delta = tp.decay_exponent();
        s.critical = tp.critical_abscissa();
    } else {
        s.args = argument_profile(d, opts);
    }
    return s;
}

} // namespace kspec
