#include "kspec/errors.hpp"
#include "kspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kCore = 2048;
constexpr std::int64_t kMinUlps = std::int64_t{1} << 20;

void push_inside(std::vector<double>& ys, const Interval& I, double y) {
    if (I.contains(y)) ys.push_back(y);
}

std::vector<double> base_grid(const Interval& I) {
    std::vector<double> ys;
    if (I.bounded()) {
        const double h = I.width() / kCore;
        for (int i = 1; i < kCore; ++i) push_inside(ys, I, I.lo + h * i);
        for (int j = 1; j <= 60; ++j) {
            push_inside(ys, I, I.lo + std::ldexp(h, -j));
            push_inside(ys, I, I.hi - std::ldexp(h, -j));
        }
        push_inside(ys, I, std::nextafter(I.lo, I.hi));
        push_inside(ys, I, std::nextafter(I.hi, I.lo));
        return ys;
    }
    double lo = std::isfinite(I.lo) ? I.lo : (std::isfinite(I.hi) ? I.hi - 128.0 : -64.0);
    const double h = 128.0 / kCore;
    for (int i = 0; i <= kCore; ++i) push_inside(ys, I, lo + h * i);
    for (int j = 1; j <= 60; ++j) {
        if (std::isfinite(I.lo)) push_inside(ys, I, I.lo + std::ldexp(h, -j));
        if (std::isfinite(I.hi)) push_inside(ys, I, I.hi - std::ldexp(h, -j));
    }
    if (std::isfinite(I.lo)) push_inside(ys, I, std::nextafter(I.lo, kInf));
    if (std::isfinite(I.hi)) push_inside(ys, I, std::nextafter(I.hi, -kInf));
    for (double r = 128.0; r < 1e300; r *= 2.0) {
        push_inside(ys, I, lo + 128.0 + r);
        push_inside(ys, I, lo - r);
    }
    return ys;
}

} // namespace

CrossSection::CrossSection(const KoenigsDomain& d, double tol_measure) : d_(d), tol_(tol_measure) {
    if (!(tol_ > 0.0)) throw SpecError("tol_measure must be positive");
    const Interval& I = d.interval();
    ys_ = base_grid(I);
    for (double s : d.special_points()) {
        push_inside(ys_, I, s);
        push_inside(ys_, I, std::nextafter(s, -kInf));
        push_inside(ys_, I, std::nextafter(s, kInf));
    }
    auto eval = [&d](double y) {
        try {
            return d.psi(y);
        } catch (const UndefinedValue&) {
            return kInf;
        }
    };
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
    psi_.resize(ys_.size());
    for (std::size_t i = 0; i < ys_.size(); ++i) psi_[i] = eval(ys_[i]);

    // Golden-section refinement of interior local minima that the grid may straddle.
    std::vector<double> extra;
    std::vector<double> refined_values;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i = 1; i + 1 < ys_.size(); ++i) {
        double v = psi_[i];
        if (!std::isfinite(v) || v > psi_[i - 1] || v > psi_[i + 1]) continue;
        double a = ys_[i - 1], b = ys_[i + 1];
        double c = b - g * (b - a), e = a + g * (b - a);
        double fc = eval(c), fe = eval(e);
        for (int it = 0; it < 200 && ordinal_distance(a, b) > 4; ++it) {
            if (fc < fe) {
                b = e;
                e = c;
                fe = fc;
                c = b - g * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = e;
                fc = fe;
                e = a + g * (b - a);
                fe = eval(e);
            }
        }
        double y = fc < fe ? c : e;
        double fy = std::min(fc, fe);
        if (fy < v - 1.0) {
            extra.push_back(y);
            refined_values.push_back(fy);
        }
    }
    double refined_min = kInf;
    for (double v : refined_values) refined_min = std::min(refined_min, v);
    if (!extra.empty()) {
        for (double y : extra) {
            push_inside(ys_, I, y);
            push_inside(ys_, I, std::nextafter(y, -kInf));
            push_inside(ys_, I, std::nextafter(y, kInf));
        }
        std::sort(ys_.begin(), ys_.end());
        ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());
        psi_.resize(ys_.size());
        for (std::size_t i = 0; i < ys_.size(); ++i) psi_[i] = eval(ys_[i]);
    }

    min_psi_ = kInf;
    for (double v : psi_) min_psi_ = std::min(min_psi_, v);
    sharp_min_ = std::isfinite(refined_min) && refined_min == min_psi_;
    const std::size_t n = ys_.size();
    if (n >= 2) {
        if (psi_[0] == min_psi_ && psi_[0] < psi_[1] - 1.0) sharp_min_ = true;
        if (psi_[n - 1] == min_psi_ && psi_[n - 1] < psi_[n - 2] - 1.0) sharp_min_ = true;
    }
}

double CrossSection::transition(std::size_t i, double x) const {
    double lo = ys_[i], hi = ys_[i + 1];
    const bool lo_in = psi_[i] < x;
    while (ordinal_distance(lo, hi) > 1) {
        double m = ordinal_midpoint(lo, hi);
        double v;
        try {
            v = d_.psi(m);
        } catch (const UndefinedValue&) {
            v = kInf;
        }
        if ((v < x) == lo_in)
            lo = m;
        else
            hi = m;
    }
    return lo_in ? lo : hi;
}

CrossSection::Section CrossSection::section(double x) const {
    Section s;
    const Interval& I = d_.interval();
    const std::size_t n = ys_.size();
    if (std::isfinite(min_psi_) && x <= min_psi_) {
        s.resolved = !sharp_min_;
        return s;
    }
    std::size_t i = 0;
    while (i < n) {
        if (!(psi_[i] < x)) {
            ++i;
            continue;
        }
        double left = i == 0 ? I.lo : transition(i - 1, x);
        std::size_t j = i;
        while (j + 1 < n && psi_[j + 1] < x) ++j;
        double right = j + 1 == n ? I.hi : transition(j, x);
        bool open_left = i == 0, open_right = j + 1 == n;
        if (!open_left && !open_right && ordinal_distance(left, right) < kMinUlps) s.resolved = false;
        // psi still rising at the grid edge: the true edge lies beyond double range.
        if (open_left && !std::isfinite(I.lo) && n >= 2 && psi_[0] > psi_[1]) s.resolved = false;
        if (open_right && !std::isfinite(I.hi) && n >= 2 && psi_[n - 1] > psi_[n - 2]) s.resolved = false;
        s.intervals.emplace_back(left, right);
        i = j + 1;
    }
    return s;
}

double CrossSection::length(double x) const {
    Section s = section(x);
    if (!s.resolved) throw MeasureTolerance("cross-section at x = " + format_number(x) + " is below resolution");
    double total = 0.0;
    for (const auto& [lo, hi] : s.intervals) total += hi - lo;
    return total;
}

std::optional<double> CrossSection::log_length(double x) const {
    Section s = section(x);
    if (!s.resolved) return std::nullopt;
    double total = 0.0;
    for (const auto& [lo, hi] : s.intervals) total += hi - lo;
    if (total <= 0.0) return -kInf;
    return std::log(total);
}

double cross_section_length(const KoenigsDomain& d, double x, const GeometryOptions& opts) {
    if (opts.use_closed_form && d.has_closed_log_ell()) return std::exp(d.closed_log_ell(x));
    return CrossSection(d, opts.tol_measure).length(x);
}

} // namespace kspec
