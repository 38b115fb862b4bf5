#include "kspec/numerics.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace kspec {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Finite: return "finite";
    case Verdict::Divergent: return "divergent";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict classify_increments(const std::vector<double>& inc, double total, const DivergencePolicy& policy) {
    if (!std::isfinite(total) || total > policy.blowup) return Verdict::Divergent;
    const std::size_t n = inc.size();
    if (n < 4) return Verdict::Inconclusive;
    const double a = inc[n - 4], b = inc[n - 3], c = inc[n - 2], d = inc[n - 1];
    bool decaying = b <= 0.5 * a && c <= 0.5 * b && d <= 0.5 * c;
    if (decaying && d < policy.tol_abs * std::max(1.0, total)) return Verdict::Finite;
    if (b >= a && c >= b && d >= c && d > 0.0) return Verdict::Divergent;
    return Verdict::Inconclusive;
}

Verdict classify_running(const std::vector<double>& inc, double total, bool last, const DivergencePolicy& policy) {
    Verdict v = classify_increments(inc, total, policy);
    if (v != Verdict::Divergent || last || !std::isfinite(total) || total > policy.blowup) return v;
    return Verdict::Inconclusive;
}

ExponentFit fit_exponent(double L1, double L2, double L3, double U) {
    ExponentFit f;
    f.kappa = -4.0 * ((L3 - L2) - (L2 - L1)) / U;
    f.p = -((L2 - L1) + f.kappa * U / 4.0) / std::log(2.0);
    return f;
}

Verdict classify_fit(const ExponentFit& fit, double band, bool force_band) {
    if (!force_band) {
        if (fit.kappa > band) return Verdict::Finite;
        if (fit.kappa < -band) return Verdict::Divergent;
    }
    if (fit.p > 1.1) return Verdict::Finite;
    if (fit.p < 0.9) return Verdict::Divergent;
    return Verdict::Inconclusive;
}

double log_sum_exp(double a, double b) {
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    if (a == ninf) return b;
    if (b == ninf) return a;
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

std::int64_t ordinal(double v) {
    auto bits = std::bit_cast<std::int64_t>(v);
    return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
}

double from_ordinal(std::int64_t o) {
    std::int64_t bits = o < 0 ? std::numeric_limits<std::int64_t>::min() - o : o;
    return std::bit_cast<double>(bits);
}

double ordinal_midpoint(double a, double b) {
    std::int64_t oa = ordinal(a), ob = ordinal(b);
    return from_ordinal(oa + (ob - oa) / 2);
}

std::int64_t ordinal_distance(double a, double b) {
    std::int64_t d = ordinal(b) - ordinal(a);
    return d < 0 ? -d : d;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol, unsigned max_depth,
                 double* error) {
    double err = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &err);
    if (error) *error = err;
    return v;
}

PanelRule kronrod_panel(double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    const auto& x = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    PanelRule r;
    // Boost stores the nonnegative half; index 0 is the centre, even indices are Gauss nodes.
    for (std::size_t i = 0; i < x.size(); ++i) {
        double g = (i % 2 == 0) ? wg[i / 2] : 0.0;
        if (i == 0) {
            r.nodes.push_back(c);
            r.weights.push_back(h * wk[0]);
            r.gauss_weights.push_back(h * g);
            continue;
        }
        for (double s : {-1.0, 1.0}) {
            r.nodes.push_back(c + s * h * x[i]);
            r.weights.push_back(h * wk[i]);
            r.gauss_weights.push_back(h * g);
        }
    }
    return r;
}

unsigned thread_count() {
    if (const char* env = std::getenv("KSPEC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace kspec
