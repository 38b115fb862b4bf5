#include "kspec/oracle.hpp"

#include "kspec/errors.hpp"
#include "kspec/geometry.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>

namespace kspec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPanelsPerShell = 8;

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double gk(const std::function<double(double)>& f, double a, double b, unsigned depth = 10, double tol = 1e-9) {
    double v = GK::integrate(f, a, b, depth, tol);
    return std::isnan(v) ? kInf : v;
}

OracleResult run_shells(const std::function<double(int)>& shell, int count, const DivergencePolicy& policy) {
    OracleResult r;
    std::vector<double> inc;
    double total = 0.0;
    for (int k = 0; k < count; ++k) {
        double s = shell(k);
        inc.push_back(s);
        total += s;
        r.partials.push_back(total);
        Verdict v = classify_running(inc, total, k + 1 == count, policy);
        if (v != Verdict::Inconclusive) {
            r.verdict = v;
            r.value = v == Verdict::Finite ? total : kInf;
            r.diagnostic = "decided after " + std::to_string(inc.size()) + " truncations";
            return r;
        }
    }
    r.value = total;
    r.diagnostic = "no verdict after " + std::to_string(count) + " truncations";
    return r;
}

OracleResult polar(const CatalogShape& shape, cplx lambda, const WeightSpec& w, double p, const OracleOptions& opts) {
    const CatalogShape s = shape.as_sector();
    const double a = s.a, b = s.b;
    const double phi = std::arg(lambda), m = std::abs(lambda);
    const double scale = (w.kind == WeightSpec::DirichletWeight ? 2.0 : p) * m;
    const double mu = kPi / (b - a);
    const double r0 = std::exp2(1.0 / mu);
    const double power = w.alpha + 2.0;

    // The angular integrand peaks where cos(phi + theta) = 1.
    std::vector<double> cuts{a};
    for (double t : {-phi, -phi + 2.0 * kPi, -phi - 2.0 * kPi})
        if (t > a && t < b) cuts.push_back(t);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());

    auto angular = [&](double r) {
        double radial = 1.0;
        if (w.kind == WeightSpec::GreenPower) radial = std::pow(std::max(r, r0), -mu * power);
        auto f = [&](double t) {
            double v = std::exp(scale * r * std::cos(phi + t));
            if (w.kind == WeightSpec::GreenPower)
                v *= std::pow(std::max(0.0, std::cos(mu * (t - 0.5 * (a + b)))), power);
            return v;
        };
        // Peaks of width ~1/(scale r) sit at segment ends; split geometrically from both ends.
        const double w0 = 1.0 / (1.0 + scale * r);
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = cuts[i], hi = cuts[i + 1], mid = 0.5 * (lo + hi);
            double h = std::min(w0, 0.5 * (hi - lo));
            double x0 = lo, x1 = hi;
            while (x0 + h < mid) {
                sum += gk(f, x0, x0 + h, 2) + gk(f, x1 - h, x1, 2);
                x0 += h;
                x1 -= h;
                h *= 2.0;
            }
            sum += gk(f, x0, x1, 2);
        }
        return r * radial * sum;
    };
    auto shell = [&](int k) {
        if (k == 0) return gk(angular, 0.0, 1.0, 6, 1e-6);
        return gk(angular, std::ldexp(1.0, k - 1), std::ldexp(1.0, k), 6, 1e-6);
    };
    OracleResult r = run_shells(shell, opts.K + 1, opts.policy);
    r.method = "polar";
    r.surrogate = w.kind == WeightSpec::GreenPower;
    return r;
}

// log of the integral of exp(-beta y) over (lo, hi).
double log_exp_integral(double beta, double lo, double hi) {
    if (!(hi > lo)) return -kInf;
    if (beta == 0.0) return std::log(hi - lo);
    if (beta > 0.0) {
        if (lo == -kInf) return kInf;
        return -beta * lo + std::log(-std::expm1(-beta * (hi - lo))) - std::log(beta);
    }
    if (hi == kInf) return kInf;
    return -beta * hi + std::log(-std::expm1(beta * (hi - lo))) - std::log(-beta);
}

// Cross-sections at fixed quadrature nodes, shared by every lambda.
class CartesianTable {
public:
    struct Node {
        double x, w;
        std::vector<std::pair<double, double>> section;
        double log_ell = -kInf;
    };
    struct Shell {
        std::vector<Node> nodes;
        bool resolved = true;
    };

    CartesianTable(const KoenigsDomain& d, int K) : cs_(d), closed_(d.has_closed_log_ell()) {
        // Shell 0: [-1, 1]; shell k >= 1: [-2^k, -2^{k-1}] and [2^{k-1}, 2^k].
        shells_.resize(static_cast<std::size_t>(K) + 1);
        parallel_for(shells_.size(), [&](std::size_t k) {
            Shell& sh = shells_[k];
            auto add = [&](double a, double b) {
                for (int i = 0; i < kPanelsPerShell; ++i) {
                    double pa = a + (b - a) * i / kPanelsPerShell, pb = a + (b - a) * (i + 1) / kPanelsPerShell;
                    PanelRule rule = kronrod_panel(pa, pb);
                    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                        CrossSection::Section s = cs_.section(rule.nodes[j]);
                        if (!s.resolved) sh.resolved = false;
                        const double le = closed_ ? d.closed_log_ell(rule.nodes[j]) : -kInf;
                        sh.nodes.push_back({rule.nodes[j], rule.weights[j], std::move(s.intervals), le});
                    }
                }
            };
            if (k == 0) {
                add(-1.0, 0.0);
                add(0.0, 1.0);
            } else {
                add(-std::ldexp(1.0, static_cast<int>(k)), -std::ldexp(1.0, static_cast<int>(k) - 1));
                add(std::ldexp(1.0, static_cast<int>(k) - 1), std::ldexp(1.0, static_cast<int>(k)));
            }
        });
    }

    OracleResult classify(cplx lambda, const OracleOptions& opts) const {
        const double a = lambda.real(), beta = 2.0 * lambda.imag();
        // Real lambda: the inner integral is the section length, known in log form past double range.
        const bool by_length = beta == 0.0 && closed_;
        int usable = 0;
        while (usable < static_cast<int>(shells_.size()) && (by_length || shells_[usable].resolved)) ++usable;
        auto shell = [&](int k) {
            double s = 0.0;
            for (const Node& n : shells_[k].nodes) {
                double L = by_length ? n.log_ell : -kInf;
                if (!by_length)
                    for (const auto& [lo, hi] : n.section) L = log_sum_exp(L, log_exp_integral(beta, lo, hi));
                if (L == -kInf) continue;
                s += n.w * std::exp(2.0 * a * n.x + L);
            }
            return s;
        };
        OracleResult r = run_shells(shell, usable, opts.policy);
        r.method = "cartesian";
        if (r.verdict == Verdict::Inconclusive && usable < static_cast<int>(shells_.size()))
            r.diagnostic = "cross-section unresolved beyond truncation " + std::to_string(usable);
        return r;
    }

private:
    CrossSection cs_;
    bool closed_;
    std::vector<Shell> shells_;
};

bool polar_applicable(const KoenigsDomain& d) { return d.catalog() && d.catalog()->is_sector_like(); }

void check_weight(const KoenigsDomain& d, cplx lambda, const WeightSpec& w) {
    if (lambda == cplx(0.0, 0.0)) throw SpecError("the area-integral oracle needs lambda != 0");
    if (w.kind == WeightSpec::GreenPower && !polar_applicable(d))
        throw Unsupported("Green-power weights are only available on sector domains");
}

} // namespace

WeightSpec WeightSpec::green_power(double alpha) {
    if (!(alpha >= -1.0)) throw SpecError("Green-power weight needs alpha >= -1");
    WeightSpec w;
    w.kind = GreenPower;
    w.alpha = alpha;
    return w;
}

WeightSpec WeightSpec::for_space(const SpaceSpec& space) {
    if (space.kind == SpaceSpec::Dirichlet) return dirichlet();
    return green_power(space.weight_alpha());
}

OracleResult area_integral_classify(const KoenigsDomain& d, cplx lambda, const WeightSpec& w, double p,
                                    const OracleOptions& opts) {
    check_weight(d, lambda, w);
    if (polar_applicable(d)) return polar(*d.catalog(), lambda, w, p, opts);
    return CartesianTable(d, opts.K).classify(lambda, opts);
}

Membership oracle_membership(const OracleResult& r) {
    switch (r.verdict) {
    case Verdict::Finite: return Membership::In;
    case Verdict::Divergent: return Membership::Out;
    case Verdict::Inconclusive: break;
    }
    return Membership::Unknown;
}

AgreementReport oracle_vs_theorem(const KoenigsDomain& d, const SpaceSpec& space, const SpectrumBracket& theorem,
                                  const Window& win, int nx, int ny, const OracleOptions& opts) {
    const WeightSpec w = WeightSpec::for_space(space);
    if (w.kind == WeightSpec::GreenPower && !polar_applicable(d))
        throw Unsupported("Green-power weights are only available on sector domains");
    std::unique_ptr<CartesianTable> table;
    if (!polar_applicable(d)) table = std::make_unique<CartesianTable>(d, opts.K);

    Raster grid = raster(theorem, win, nx, ny);
    AgreementReport rep;
    rep.entries.resize(grid.cells.size());
    parallel_for(grid.cells.size(), [&](std::size_t i) {
        AgreementEntry& e = rep.entries[i];
        e.lambda = grid.center(static_cast<int>(i) / nx, static_cast<int>(i) % nx);
        e.theorem = grid.cells[i];
        e.boundary_distance =
            std::min(theorem.inner.boundary_distance(e.lambda), theorem.outer.boundary_distance(e.lambda));
        if (e.lambda == cplx(0.0, 0.0)) {
            e.oracle = Verdict::Finite;
            return;
        }
        if (e.theorem == Membership::Unknown) return;
        OracleResult o = table ? table->classify(e.lambda, opts) : polar(*d.catalog(), e.lambda, w, space.p, opts);
        e.oracle = o.verdict;
        e.mismatch = oracle_membership(o) != e.theorem;
        e.excused = e.mismatch && e.boundary_distance <= opts.boundary_tol;
    });
    for (const auto& e : rep.entries) {
        if (e.theorem == Membership::Unknown)
            ++rep.theorem_unknown;
        else if (!e.mismatch)
            ++rep.agreements;
        else if (e.excused)
            ++rep.excused;
        else
            ++rep.unexcused;
    }
    return rep;
}

} // namespace kspec
