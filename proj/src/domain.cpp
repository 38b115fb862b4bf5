#include "kspec/domain.hpp"

#include "kspec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kspec {

namespace {

void collect_knots(const ExprNode& n, std::vector<double>& out) {
    for (const auto& [lo, hi] : n.intervals) {
        out.push_back(lo);
        out.push_back(hi);
    }
    for (const auto& a : n.args) collect_knots(*a, out);
}

} // namespace

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

std::string SemigroupClass::name() const {
    switch (kind) {
    case Hyperbolic: return "hyperbolic";
    case ParabolicPositiveStep: return "parabolic-positive-step";
    case ParabolicZeroStep: return "parabolic-zero-step";
    }
    return "?";
}

KoenigsDomain KoenigsDomain::from_parts(Parts parts) {
    if (!(parts.interval.lo < parts.interval.hi)) throw SpecError("defining interval must satisfy lo < hi");
    if (!parts.psi) throw SpecError("defining function missing");
    auto& sp = parts.special_points;
    const Interval I = parts.interval;
    sp.erase(std::remove_if(sp.begin(), sp.end(), [&](double y) { return !I.contains(y); }), sp.end());
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    return KoenigsDomain(std::make_shared<const Parts>(std::move(parts)));
}

KoenigsDomain KoenigsDomain::from_defining_function(Interval interval, Expr psi) {
    if (psi.variable() == 'x') throw SpecError("defining function must be written in the variable y");
    Parts p;
    p.interval = interval;
    p.psi = [psi](double y) { return eval_expr(psi, y); };
    p.psi_expr = psi;
    collect_knots(psi.root(), p.special_points);
    p.special_points.push_back(0.0);
    p.description = "defining function psi(y) = " + psi.str() + " on (" + format_number(interval.lo) + ", " +
                    format_number(interval.hi) + ")";
    return from_parts(std::move(p));
}

bool KoenigsDomain::contains(cplx w) const {
    double y = w.imag();
    if (!interval().contains(y)) return false;
    try {
        return w.real() > psi(y);
    } catch (const UndefinedValue&) {
        return false;
    }
}

bool KoenigsDomain::set_contains(cplx w) const {
    if (parts_->set_member) return parts_->set_member(w);
    return contains(w);
}

KoenigsDomain KoenigsDomain::reflected() const {
    Parts p;
    const Parts& q = *parts_;
    p.interval = Interval{-q.interval.hi, -q.interval.lo};
    auto psi = q.psi;
    p.psi = [psi](double y) { return psi(-y); };
    if (q.set_member) {
        auto m = q.set_member;
        p.set_member = [m](cplx w) { return m(std::conj(w)); };
    }
    p.log_ell = q.log_ell;
    for (double s : q.special_points) p.special_points.push_back(-s);
    if (q.catalog && q.catalog->is_sector_like()) {
        CatalogShape s = q.catalog->as_sector();
        p.catalog = CatalogShape::sector(std::conj(s.vertex), -s.b, -s.a);
    }
    p.description = "reflection of " + q.description;
    return from_parts(std::move(p));
}

KoenigsDomain KoenigsDomain::translated(double dx, double dy) const {
    Parts p;
    const Parts& q = *parts_;
    p.interval = Interval{q.interval.lo + dy, q.interval.hi + dy};
    auto psi = q.psi;
    p.psi = [psi, dx, dy](double y) { return xr::add(psi(y - dy), dx); };
    if (q.set_member) {
        auto m = q.set_member;
        p.set_member = [m, dx, dy](cplx w) { return m(w - cplx(dx, dy)); };
    }
    if (q.log_ell) {
        auto le = q.log_ell;
        p.log_ell = [le, dx](double x) { return le(x - dx); };
    }
    for (double s : q.special_points) p.special_points.push_back(s + dy);
    if (q.catalog && q.catalog->is_sector_like()) {
        CatalogShape s = q.catalog->as_sector();
        p.catalog = CatalogShape::sector(s.vertex + cplx(dx, dy), s.a, s.b);
    }
    p.description = "translate of " + q.description;
    return from_parts(std::move(p));
}

SemigroupClass classify(const KoenigsDomain& d) {
    const Interval& I = d.interval();
    SemigroupClass c;
    if (I.bounded()) {
        c.kind = SemigroupClass::Hyperbolic;
        c.mu = std::numbers::pi / I.width();
    } else if (std::isfinite(I.lo)) {
        c.kind = SemigroupClass::ParabolicPositiveStep;
        c.orientation = SemigroupClass::Upper;
    } else if (std::isfinite(I.hi)) {
        c.kind = SemigroupClass::ParabolicPositiveStep;
        c.orientation = SemigroupClass::Lower;
    } else {
        c.kind = SemigroupClass::ParabolicZeroStep;
    }
    return c;
}

bool contains_point(const KoenigsDomain& d, cplx w) { return d.contains(w); }

std::vector<double> sample_ordinates(const Interval& I, int n) {
    std::vector<double> ys;
    n = std::max(n, 2);
    ys.reserve(static_cast<std::size_t>(n) + 1);
    auto geometric = [n](int i) { return std::exp2(-10.0 + 50.0 * i / (n - 1)); };
    if (I.bounded()) {
        for (int i = 0; i < n; ++i) ys.push_back(I.lo + I.width() * (i + 0.5) / n);
    } else if (std::isfinite(I.lo)) {
        for (int i = 0; i < n; ++i) ys.push_back(I.lo + geometric(i));
    } else if (std::isfinite(I.hi)) {
        for (int i = 0; i < n; ++i) ys.push_back(I.hi - geometric(i));
    } else {
        ys.push_back(0.0);
        for (int i = 0; i < n / 2; ++i) {
            double g = std::exp2(-10.0 + 50.0 * i / std::max(1, n / 2 - 1));
            ys.push_back(g);
            ys.push_back(-g);
        }
    }
    std::sort(ys.begin(), ys.end());
    return ys;
}

std::vector<cplx> sample_points(const KoenigsDomain& d, int samples) {
    std::vector<cplx> pts;
    const Interval& I = d.interval();
    for (double y : sample_ordinates(I, samples)) {
        double p = -std::numeric_limits<double>::infinity();
        try {
            p = d.psi(y);
        } catch (const UndefinedValue&) {
            continue;
        }
        if (std::isfinite(p)) {
            double s = std::max(1.0, std::abs(p));
            for (double off : {-1.0, -1e-3, 1e-3, 1.0}) pts.emplace_back(p + off * s, y);
        } else {
            for (double x : {-10.0, 0.0, 10.0}) pts.emplace_back(x, y);
        }
    }
    if (std::isfinite(I.lo))
        for (double x : {-1.0, 0.0, 1.0}) pts.emplace_back(x, I.lo - 0.5);
    if (std::isfinite(I.hi))
        for (double x : {-1.0, 0.0, 1.0}) pts.emplace_back(x, I.hi + 0.5);
    return pts;
}

bool positive_direction_check(const std::function<bool(cplx)>& member, const std::vector<cplx>& points) {
    for (const cplx& w : points) {
        if (!member(w)) continue;
        for (double t : {0.1, 1.0, 10.0})
            if (!member(w + t)) return false;
    }
    return true;
}

bool positive_direction_check(const KoenigsDomain& d, int samples) {
    return positive_direction_check([&d](cplx w) { return d.set_contains(w); }, sample_points(d, samples));
}

std::vector<std::string> validate(const KoenigsDomain& d, int samples) {
    std::vector<std::string> warnings;
    auto ys = sample_ordinates(d.interval(), samples);
    std::vector<double> vals;
    vals.reserve(ys.size());
    for (double y : ys) {
        double v = 0.0;
        try {
            v = d.psi(y);
        } catch (const UndefinedValue& u) {
            throw SpecError("defining function undefined at y = " + format_number(y) + ": " + u.reason());
        }
        if (v == std::numeric_limits<double>::infinity())
            throw SpecError("defining function takes the value +inf at y = " + format_number(y));
        vals.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        if (!std::isfinite(vals[i]) || !std::isfinite(vals[i + 1])) continue;
        double m = 0.5 * (ys[i] + ys[i + 1]);
        double vm = 0.0;
        try {
            vm = d.psi(m);
        } catch (const UndefinedValue& u) {
            throw SpecError("defining function undefined at y = " + format_number(m) + ": " + u.reason());
        }
        double span = std::abs(vals[i + 1] - vals[i]);
        if (std::isfinite(vm) && std::abs(vm - 0.5 * (vals[i] + vals[i + 1])) > 1e6 * (1.0 + span))
            warnings.push_back("possible discontinuity of the defining function near y = " + format_number(m));
    }
    return warnings;
}

Normalization normal_form(const KoenigsDomain& d, KoenigsDomain& out) {
    Normalization n;
    SemigroupClass c = classify(d);
    out = d;
    if (c.kind != SemigroupClass::ParabolicPositiveStep) return n;
    if (c.orientation == SemigroupClass::Lower) {
        out = out.reflected();
        n.reflected = true;
    }
    n.shift_y = -out.interval().lo;
    if (n.shift_y != 0.0) out = out.translated(0.0, n.shift_y);
    return n;
}

} // namespace kspec
