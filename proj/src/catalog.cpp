#include "kspec/domain.hpp"
#include "kspec/errors.hpp"
#include "kspec/numerics.hpp"

#include <boost/math/special_functions/lambert_w.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Boundary polygon of the oscillating example: vertices (X_k, log Y_k), both strictly
// decreasing in the non-collapsed entries. Starts at (-2, -2).
struct Polygon {
    std::vector<double> X, logY;

    Polygon() {
        X.push_back(-2.0);
        logY.push_back(-2.0);
        for (int n = 1; n <= 1020; ++n) {
            double p = std::ldexp(1.0, n);
            X.push_back(-p - 1.0 / (static_cast<double>(n) * n));
            logY.push_back(log_sum_exp(-2.0 * p, -std::pow(3.0, n)));
            X.push_back(-2.0 * p);
            logY.push_back(-2.0 * p);
        }
    }

    double log_ell(double x) const {
        if (x >= X.front()) return logY.front();
        auto it = std::partition_point(X.begin(), X.end(), [x](double v) { return v > x; });
        if (it == X.end()) return logY.back() + 2.0 * (x - X.back());
        std::size_t j = static_cast<std::size_t>(it - X.begin());
        std::size_t k = j - 1;
        double t = (X[k] - x) / (X[k] - X[j]);
        double l0 = t < 1.0 ? logY[k] + std::log1p(-t) : -kInf;
        double l1 = t > 0.0 ? logY[j] + std::log(t) : -kInf;
        return log_sum_exp(l0, l1);
    }

    double psi(double y) const {
        double ly = std::log(y);
        if (ly >= logY.front()) return X.front();
        auto it = std::partition_point(logY.begin(), logY.end(), [ly](double v) { return v > ly; });
        if (it == logY.end()) return -kInf;
        std::size_t j = static_cast<std::size_t>(it - logY.begin());
        std::size_t k = j - 1;
        double s = std::expm1(ly - logY[k]) / std::expm1(logY[j] - logY[k]);
        return X[k] + (X[j] - X[k]) * s;
    }
};

const Polygon& polygon() {
    static const Polygon p;
    return p;
}

double sector_psi(const CatalogShape& s, double y) {
    double eta = y - s.vertex.imag();
    double vx = s.vertex.real();
    if (eta > 0) return s.b >= kPi ? -kInf : vx + eta / std::tan(s.b);
    if (eta < 0) return s.a <= -kPi ? -kInf : vx + eta / std::tan(s.a);
    return vx;
}

bool sector_member(const CatalogShape& s, cplx w) {
    cplx d = w - s.vertex;
    if (d == cplx(0.0, 0.0)) return false;
    if (d.imag() == 0.0) d = cplx(d.real(), 0.0);
    double t = std::arg(d);
    return s.a < t && t < s.b;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw SpecError(msg);
}

} // namespace

CatalogShape CatalogShape::strip(double y_lo, double y_hi) {
    require(std::isfinite(y_lo) && std::isfinite(y_hi) && y_lo < y_hi, "strip needs finite y_lo < y_hi");
    CatalogShape s;
    s.kind = CatalogKind::HorizontalStrip;
    s.y_lo = y_lo;
    s.y_hi = y_hi;
    return s;
}

CatalogShape CatalogShape::half_strip(double x0, double y_lo, double y_hi) {
    require(std::isfinite(x0), "half-strip needs a finite x0");
    CatalogShape s = strip(y_lo, y_hi);
    s.kind = CatalogKind::HorizontalHalfStrip;
    s.x0 = x0;
    return s;
}

CatalogShape CatalogShape::sector(cplx vertex, double a, double b) {
    require(std::isfinite(vertex.real()) && std::isfinite(vertex.imag()), "sector vertex must be finite");
    require(-kPi <= a && a < b && b <= kPi && a <= 0.0 && b >= 0.0, "sector needs -pi <= a <= 0 <= b <= pi, a < b");
    CatalogShape s;
    s.kind = CatalogKind::Sector;
    s.vertex = vertex;
    s.a = a;
    s.b = b;
    return s;
}

CatalogShape CatalogShape::upper_half_plane() {
    CatalogShape s;
    s.kind = CatalogKind::UpperHalfPlane;
    return s;
}

CatalogShape CatalogShape::sigma_eps(double eps) {
    require(std::isfinite(eps) && eps > 0, "sigma-eps needs eps > 0");
    CatalogShape s;
    s.kind = CatalogKind::SigmaEps;
    s.param = eps;
    return s;
}

CatalogShape CatalogShape::sigma_eps_damped(double eps) {
    CatalogShape s = sigma_eps(eps);
    s.kind = CatalogKind::SigmaEpsDamped;
    return s;
}

CatalogShape CatalogShape::exp_upper(double alpha) {
    require(std::isfinite(alpha) && alpha > 0, "exp-upper needs alpha > 0");
    CatalogShape s;
    s.kind = CatalogKind::ExpUpper;
    s.param = alpha;
    return s;
}

CatalogShape CatalogShape::exp_symmetric() {
    CatalogShape s;
    s.kind = CatalogKind::ExpSymmetric;
    return s;
}

CatalogShape CatalogShape::cot_log(double x) {
    require(x > 0 && x < 1, "cot-log needs 0 < x < 1");
    CatalogShape s;
    s.kind = CatalogKind::CotLog;
    s.param = x;
    return s;
}

CatalogShape CatalogShape::nonexistent_delta() {
    CatalogShape s;
    s.kind = CatalogKind::NonexistentDelta;
    return s;
}

std::string CatalogShape::name() const {
    switch (kind) {
    case CatalogKind::HorizontalStrip: return "strip";
    case CatalogKind::HorizontalHalfStrip: return "half-strip";
    case CatalogKind::Sector: return "sector";
    case CatalogKind::UpperHalfPlane: return "upper-half-plane";
    case CatalogKind::SigmaEps: return "sigma-eps";
    case CatalogKind::SigmaEpsDamped: return "sigma-eps-damped";
    case CatalogKind::ExpUpper: return "exp-upper";
    case CatalogKind::ExpSymmetric: return "exp-symmetric";
    case CatalogKind::CotLog: return "cot-log";
    case CatalogKind::NonexistentDelta: return "nonexistent-delta";
    }
    return "?";
}

CatalogShape CatalogShape::as_sector() const {
    if (kind == CatalogKind::Sector) return *this;
    if (kind == CatalogKind::UpperHalfPlane) return sector(cplx(0.0, 0.0), 0.0, kPi);
    throw Unsupported("shape " + name() + " is not a sector");
}

KoenigsDomain KoenigsDomain::from_catalog(const CatalogShape& s) {
    Parts p;
    p.catalog = s;
    const double e = s.param;
    auto expr = [](const std::string& text) { return parse_expr(text); };
    switch (s.kind) {
    case CatalogKind::HorizontalStrip: {
        p.interval = {s.y_lo, s.y_hi};
        p.psi = [](double) { return -kInf; };
        p.psi_expr = expr("-inf");
        double lw = std::log(s.y_hi - s.y_lo);
        p.log_ell = [lw](double) { return lw; };
        p.set_member = [s](cplx w) { return s.y_lo < w.imag() && w.imag() < s.y_hi; };
        p.description = "horizontal strip " + format_number(s.y_lo) + " < Im w < " + format_number(s.y_hi);
        break;
    }
    case CatalogKind::HorizontalHalfStrip: {
        p.interval = {s.y_lo, s.y_hi};
        p.psi = [x0 = s.x0](double) { return x0; };
        p.psi_expr = Expr::constant(s.x0);
        double lw = std::log(s.y_hi - s.y_lo);
        p.log_ell = [lw, x0 = s.x0](double x) { return x <= x0 ? -kInf : lw; };
        p.set_member = [s](cplx w) { return w.real() > s.x0 && s.y_lo < w.imag() && w.imag() < s.y_hi; };
        p.description = "horizontal half-strip Re w > " + format_number(s.x0);
        break;
    }
    case CatalogKind::Sector:
    case CatalogKind::UpperHalfPlane: {
        CatalogShape q = s.as_sector();
        double vy = q.vertex.imag();
        p.interval = {q.a < 0 ? -kInf : vy, q.b > 0 ? kInf : vy};
        p.psi = [q](double y) { return sector_psi(q, y); };
        p.set_member = [q](cplx w) { return sector_member(q, w); };
        p.special_points = {vy};
        p.description = s.kind == CatalogKind::UpperHalfPlane
                            ? "upper half-plane"
                            : "sector with vertex " + format_number(q.vertex.real()) + "+" +
                                  format_number(q.vertex.imag()) + "i, arg in (" + format_number(q.a) + ", " +
                                  format_number(q.b) + ")";
        break;
    }
    case CatalogKind::SigmaEps: {
        p.interval = {-1.0, 1.0};
        p.psi = [e](double y) { return y == 0.0 ? -kInf : std::log(std::abs(y)) / (2 * e); };
        p.psi_expr = expr("log(abs(y))/" + format_number(2 * e));
        p.log_ell = [e](double x) { return x < 0 ? std::log(2.0) + 2 * e * x : std::log(2.0); };
        p.set_member = [e](cplx w) {
            double x = w.real(), y = std::abs(w.imag());
            return x < 0 ? y < std::exp(2 * e * x) : y < 1.0;
        };
        p.special_points = {0.0};
        p.description = "sigma-eps strip-like domain, eps = " + format_number(e);
        break;
    }
    case CatalogKind::SigmaEpsDamped: {
        double top = std::exp(-2 * e);
        p.interval = {-top, top};
        p.psi = [e](double y) {
            if (y == 0.0) return -kInf;
            return -boost::math::lambert_w0(e / std::sqrt(std::abs(y))) / e;
        };
        p.log_ell = [e](double x) {
            return x < -1 ? std::log(2.0) + 2 * e * x - 2 * std::log(-x) : std::log(2.0) - 2 * e;
        };
        p.set_member = [e, top](cplx w) {
            double x = w.real(), y = std::abs(w.imag());
            return x < -1 ? y < std::exp(2 * e * x) / (x * x) : y < top;
        };
        p.special_points = {0.0};
        p.description = "damped sigma-eps domain, eps = " + format_number(e);
        break;
    }
    case CatalogKind::ExpUpper: {
        p.interval = {0.0, kInf};
        p.psi = [e](double y) { return std::max(0.0, std::log(y) / (2 * e)); };
        p.psi_expr = expr("max(0, log(y)/" + format_number(2 * e) + ")");
        p.set_member = [e](cplx w) {
            return w.real() > 0 && w.imag() > 0 && w.imag() < std::exp(2 * e * w.real());
        };
        p.log_ell = [e](double x) { return x > 0 ? 2 * e * x : -kInf; };
        p.special_points = {1.0};
        p.description = "exponential upper domain, alpha = " + format_number(e);
        break;
    }
    case CatalogKind::ExpSymmetric: {
        p.interval = {-kInf, kInf};
        p.psi = [](double y) { return y == 0.0 ? 0.0 : std::max(0.0, std::log(std::abs(y))); };
        p.psi_expr = expr("max(0, log(abs(y)))");
        p.set_member = [](cplx w) { return w.real() > 0 && std::abs(w.imag()) < std::exp(w.real()); };
        p.log_ell = [](double x) { return x > 0 ? std::log(2.0) + x : -kInf; };
        p.special_points = {-1.0, 0.0, 1.0};
        p.description = "exponential symmetric domain";
        break;
    }
    case CatalogKind::CotLog: {
        const double k = e * kPi;
        const double cot = std::cos(k) / std::sin(k), lsin = std::log(std::sin(k));
        p.interval = {0.0, kInf};
        p.psi = [k, cot, lsin](double y) {
            if (y <= k) return -kInf;
            return (y - k) * cot + std::log(y - k) - lsin;
        };
        p.special_points = {k};
        p.description = "cot-log domain, x = " + format_number(e);
        break;
    }
    case CatalogKind::NonexistentDelta: {
        p.interval = {0.0, std::exp(-2.0)};
        p.psi = [](double y) { return polygon().psi(y); };
        p.log_ell = [](double x) { return polygon().log_ell(x); };
        const Polygon& poly = polygon();
        for (double ly : poly.logY)
            if (ly > -700.0) p.special_points.push_back(std::exp(ly));
        p.description = "oscillating polygonal domain without a decay exponent";
        break;
    }
    }
    return from_parts(std::move(p));
}

} // namespace kspec
