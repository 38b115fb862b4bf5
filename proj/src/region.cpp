#include "kspec/region.hpp"

#include "kspec/errors.hpp"
#include "kspec/expr.hpp"
#include "kspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double arg_0_2pi(cplx z) {
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    double t = std::atan2(im, z.real());
    return t < 0.0 ? t + kTwoPi : t;
}

// Distance from z to the ray {t e^{i phi} : t >= 0}.
double ray_distance(cplx z, double phi) {
    cplx u = std::polar(1.0, phi);
    double t = z.real() * u.real() + z.imag() * u.imag();
    if (t <= 0.0) return std::abs(z);
    return std::abs(z - t * u);
}

bool angle_in(double t, const Primitive& p) {
    for (double s : {t, t + kTwoPi, t - kTwoPi}) {
        bool above = p.lo_closed ? s >= p.lo - kAngleTol : s > p.lo + kAngleTol;
        bool below = p.hi_closed ? s <= p.hi + kAngleTol : s < p.hi - kAngleTol;
        if (above && below) return true;
    }
    return false;
}

double angular_gap(double a, double b) {
    double d = std::fmod(std::abs(a - b), kTwoPi);
    return std::min(d, kTwoPi - d);
}

std::string flag_open(bool closed) { return closed ? "[" : "("; }
std::string flag_close(bool closed) { return closed ? "]" : ")"; }

} // namespace

std::string to_string(Membership m) {
    switch (m) {
    case Membership::In: return "in";
    case Membership::Out: return "out";
    case Membership::Unknown: return "unknown";
    }
    return "?";
}

Primitive Primitive::origin() { return Primitive{}; }

Primitive Primitive::wedge(double lo, double hi, bool lo_closed, bool hi_closed) {
    if (!(lo < hi) || hi - lo > kTwoPi) throw SpecError("wedge needs lo < hi within one turn");
    Primitive p;
    p.kind = ArgWedge;
    p.lo = lo;
    p.hi = hi;
    p.lo_closed = lo_closed;
    p.hi_closed = hi_closed;
    return p;
}

Primitive Primitive::strip(double re_lo, double re_hi, bool lo_closed, bool hi_closed) {
    if (!(re_lo < re_hi) || re_hi > 0.0) throw SpecError("vertical strip needs re_lo < re_hi <= 0");
    Primitive p;
    p.kind = VerticalStrip;
    p.lo = re_lo;
    p.hi = re_hi;
    p.lo_closed = lo_closed && std::isfinite(re_lo);
    p.hi_closed = hi_closed;
    return p;
}

Primitive Primitive::half_line(double direction, bool origin_included) {
    Primitive p;
    p.kind = HalfLine;
    double d = std::fmod(direction, kTwoPi);
    p.direction = d < 0 ? d + kTwoPi : d;
    p.origin_included = origin_included;
    return p;
}

Primitive Primitive::left_half_plane() {
    Primitive p;
    p.kind = LeftHalfPlaneOpen;
    return p;
}

bool Primitive::contains(cplx z) const {
    switch (kind) {
    case Origin: return z == cplx(0.0, 0.0);
    case ArgWedge: return z != cplx(0.0, 0.0) && angle_in(arg_0_2pi(z), *this);
    case VerticalStrip: {
        double x = z.real();
        bool above = lo_closed ? x >= lo : x > lo;
        bool below = hi_closed ? x <= hi : x < hi;
        return above && below;
    }
    case HalfLine:
        if (z == cplx(0.0, 0.0)) return origin_included;
        return angular_gap(arg_0_2pi(z), direction) <= kAngleTol;
    case LeftHalfPlaneOpen: return z.real() < 0.0;
    }
    return false;
}

double Primitive::boundary_distance(cplx z) const {
    switch (kind) {
    case Origin: return std::abs(z);
    case ArgWedge: return std::min(ray_distance(z, lo), ray_distance(z, hi));
    case VerticalStrip: {
        double d = std::abs(z.real() - hi);
        if (std::isfinite(lo)) d = std::min(d, std::abs(z.real() - lo));
        return d;
    }
    case HalfLine: return ray_distance(z, direction);
    case LeftHalfPlaneOpen: return std::abs(z.real());
    }
    return kInf;
}

Primitive Primitive::conjugated() const {
    Primitive p = *this;
    switch (kind) {
    case ArgWedge:
        p.lo = kTwoPi - hi;
        p.hi = kTwoPi - lo;
        p.lo_closed = hi_closed;
        p.hi_closed = lo_closed;
        break;
    case HalfLine: p = half_line(kTwoPi - direction, origin_included); break;
    default: break;
    }
    return p;
}

std::string Primitive::describe() const {
    switch (kind) {
    case Origin: return "{0}";
    case ArgWedge:
        return "{arg in " + flag_open(lo_closed) + format_number(lo) + ", " + format_number(hi) + flag_close(hi_closed) +
               "}";
    case VerticalStrip:
        return "{Re in " + flag_open(lo_closed) + format_number(lo) + ", " + format_number(hi) + flag_close(hi_closed) +
               "}";
    case HalfLine:
        return std::string("{t e^(i ") + format_number(direction) + ") : t " + (origin_included ? ">=" : ">") + " 0}";
    case LeftHalfPlaneOpen: return "{Re < 0}";
    }
    return "?";
}

bool Cell::contains(cplx z) const {
    if (parts.empty()) return false;
    for (const auto& p : parts)
        if (!p.contains(z)) return false;
    return true;
}

SpectrumRegion SpectrumRegion::origin_only() { return SpectrumRegion({Cell{{Primitive::origin()}}}); }

SpectrumRegion SpectrumRegion::with_origin(const Primitive& p) {
    return SpectrumRegion({Cell{{Primitive::origin()}}, Cell{{p}}});
}

SpectrumRegion SpectrumRegion::with_origin(const Cell& c) { return SpectrumRegion({Cell{{Primitive::origin()}}, c}); }

bool SpectrumRegion::contains(cplx z) const {
    return std::any_of(cells_.begin(), cells_.end(), [z](const Cell& c) { return c.contains(z); });
}

double SpectrumRegion::boundary_distance(cplx z) const {
    double d = kInf;
    for (const auto& c : cells_)
        for (const auto& p : c.parts) d = std::min(d, p.boundary_distance(z));
    return d;
}

SpectrumRegion SpectrumRegion::conjugated() const {
    std::vector<Cell> out;
    for (const auto& c : cells_) {
        Cell n;
        for (const auto& p : c.parts) n.parts.push_back(p.conjugated());
        out.push_back(std::move(n));
    }
    return SpectrumRegion(std::move(out));
}

std::string SpectrumRegion::describe() const {
    std::string s;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (i) s += " U ";
        const auto& parts = cells_[i].parts;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j) s += " n ";
            s += parts[j].describe();
        }
    }
    return s.empty() ? "{}" : s;
}

namespace {

bool same_primitive(const Primitive& a, const Primitive& b, double tol) {
    if (a.kind != b.kind) return false;
    auto eq = [tol](double x, double y) { return x == y || std::abs(x - y) <= tol; };
    switch (a.kind) {
    case Primitive::Origin:
    case Primitive::LeftHalfPlaneOpen: return true;
    case Primitive::ArgWedge:
    case Primitive::VerticalStrip:
        return eq(a.lo, b.lo) && eq(a.hi, b.hi) && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
    case Primitive::HalfLine: return angular_gap(a.direction, b.direction) <= tol && a.origin_included == b.origin_included;
    }
    return false;
}

bool same_cell(const Cell& a, const Cell& b, double tol) {
    if (a.parts.size() != b.parts.size()) return false;
    std::vector<bool> used(b.parts.size(), false);
    for (const auto& p : a.parts) {
        bool found = false;
        for (std::size_t i = 0; i < b.parts.size() && !found; ++i)
            if (!used[i] && same_primitive(p, b.parts[i], tol)) used[i] = found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace

bool equivalent(const SpectrumRegion& a, const SpectrumRegion& b, double tol) {
    const auto& ca = a.cells();
    const auto& cb = b.cells();
    if (ca.size() != cb.size()) return false;
    std::vector<bool> used(cb.size(), false);
    for (const auto& c : ca) {
        bool found = false;
        for (std::size_t i = 0; i < cb.size() && !found; ++i)
            if (!used[i] && same_cell(c, cb[i], tol)) used[i] = found = true;
        if (!found) return false;
    }
    return true;
}

SpectrumBracket SpectrumBracket::exact_region(SpectrumRegion r, std::string label) {
    SpectrumBracket b;
    b.inner = r;
    b.outer = std::move(r);
    b.exact = true;
    b.case_label = std::move(label);
    return b;
}

SpectrumBracket SpectrumBracket::conjugated() const {
    SpectrumBracket b = *this;
    b.inner = inner.conjugated();
    b.outer = outer.conjugated();
    return b;
}

Membership region_membership(const SpectrumRegion& r, cplx lambda) {
    return r.contains(lambda) ? Membership::In : Membership::Out;
}

Membership region_membership(const SpectrumBracket& b, cplx lambda) {
    if (b.inner.contains(lambda)) return Membership::In;
    if (!b.outer.contains(lambda)) return Membership::Out;
    return Membership::Unknown;
}

cplx Raster::center(int row, int col) const {
    double hx = (window.re_hi - window.re_lo) / nx;
    double hy = (window.im_hi - window.im_lo) / ny;
    return {window.re_lo + (col + 0.5) * hx, window.im_hi - (row + 0.5) * hy};
}

Raster raster(const SpectrumBracket& b, const Window& w, int nx, int ny) {
    if (nx < 2 || ny < 2) throw SpecError("raster needs at least 2 cells per axis");
    if (!(w.re_lo < w.re_hi) || !(w.im_lo < w.im_hi)) throw SpecError("raster window must have lo < hi");
    Raster r;
    r.window = w;
    r.nx = nx;
    r.ny = ny;
    r.cells.assign(static_cast<std::size_t>(nx) * ny, Membership::Out);
    parallel_for(static_cast<std::size_t>(ny), [&](std::size_t row) {
        for (int col = 0; col < nx; ++col)
            r.cells[row * nx + col] = region_membership(b, r.center(static_cast<int>(row), col));
    });
    return r;
}

} // namespace kspec
