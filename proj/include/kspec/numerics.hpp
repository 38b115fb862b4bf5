#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace kspec {

enum class Verdict { Finite, Divergent, Inconclusive };
std::string to_string(Verdict v);

struct IntegralVerdict {
    Verdict verdict = Verdict::Inconclusive;
    double value = 0.0; // +inf when Divergent
    std::string diagnostic;
};

// Shell-increment policy for improper integrals over dyadic truncations.
struct DivergencePolicy {
    double tol_abs = 1e-8;
    double blowup = 1e12;
};
// increments: contributions of successive shells (nonnegative); total: running sum.
Verdict classify_increments(const std::vector<double>& increments, double total,
                            const DivergencePolicy& policy = {});
// Running form: before the last truncation only Finite and blow-up verdicts are final.
Verdict classify_running(const std::vector<double>& increments, double total, bool last,
                         const DivergencePolicy& policy = {});

// Fit log g(u) ~ C - kappa*u - p*log(u) through samples at U/4, U/2, U.
struct ExponentFit {
    double kappa = 0.0;
    double p = 0.0;
};
ExponentFit fit_exponent(double L_quarter, double L_half, double L_full, double U);

// Verdict for a tail integral from its exponent fit; band is the |kappa| tolerance.
Verdict classify_fit(const ExponentFit& fit, double band, bool force_band = false);

double log_sum_exp(double a, double b);

// Ordinal (bit pattern) view of doubles: adjacent representable values differ by 1.
std::int64_t ordinal(double v);
double from_ordinal(std::int64_t o);
double ordinal_midpoint(double a, double b);
std::int64_t ordinal_distance(double a, double b);

// Adaptive Gauss-Kronrod (61 point) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10,
                 unsigned max_depth = 12, double* error = nullptr);

// Fixed 15-point Kronrod nodes/weights mapped to [a, b]; gauss_weights are zero at Kronrod-only nodes.
struct PanelRule {
    std::vector<double> nodes, weights, gauss_weights;
};
PanelRule kronrod_panel(double a, double b);

// Worker count: KSPEC_THREADS if set and positive, otherwise hardware concurrency.
unsigned thread_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace kspec
