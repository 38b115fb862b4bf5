#pragma once

#include "kspec/expr.hpp"

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kspec {

using cplx = std::complex<double>;

// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool bounded() const;
    double width() const { return hi - lo; }
    bool contains(double y) const { return lo < y && y < hi; }
};

enum class CatalogKind {
    HorizontalStrip,
    HorizontalHalfStrip,
    Sector,
    UpperHalfPlane,
    SigmaEps,
    SigmaEpsDamped,
    ExpUpper,
    ExpSymmetric,
    CotLog,
    NonexistentDelta,
};

struct CatalogShape {
    CatalogKind kind = CatalogKind::UpperHalfPlane;
    double y_lo = 0.0, y_hi = 0.0;
    double x0 = 0.0;
    cplx vertex{};
    double a = 0.0, b = 0.0;
    // eps for the sigma-eps family, alpha for exp-upper, x for cot-log.
    double param = 0.0;

    static CatalogShape strip(double y_lo, double y_hi);
    static CatalogShape half_strip(double x0, double y_lo, double y_hi);
    static CatalogShape sector(cplx vertex, double a, double b);
    static CatalogShape upper_half_plane();
    static CatalogShape sigma_eps(double eps);
    static CatalogShape sigma_eps_damped(double eps);
    static CatalogShape exp_upper(double alpha);
    static CatalogShape exp_symmetric();
    static CatalogShape cot_log(double x);
    static CatalogShape nonexistent_delta();

    // Public catalog name as used in JSON specs.
    std::string name() const;
    bool is_sector_like() const { return kind == CatalogKind::Sector || kind == CatalogKind::UpperHalfPlane; }
    // Sector view of UpperHalfPlane and Sector shapes.
    CatalogShape as_sector() const;
};

struct SemigroupClass {
    enum Kind { Hyperbolic, ParabolicPositiveStep, ParabolicZeroStep };
    enum Orientation { Upper, Lower };
    Kind kind = ParabolicZeroStep;
    double mu = 0.0;
    Orientation orientation = Upper;

    bool parabolic() const { return kind != Hyperbolic; }
    std::string name() const;
};

class KoenigsDomain {
public:
    struct Parts {
        Interval interval;
        std::function<double(double)> psi;
        std::optional<Expr> psi_expr;
        std::function<bool(cplx)> set_member;
        std::function<double(double)> log_ell;
        std::vector<double> special_points;
        std::optional<CatalogShape> catalog;
        std::string description;
    };

    static KoenigsDomain from_defining_function(Interval interval, Expr psi);
    static KoenigsDomain from_catalog(const CatalogShape& shape);
    static KoenigsDomain from_parts(Parts parts);

    const Interval& interval() const { return parts_->interval; }
    // psi(y) for y in the interval; may be -inf. Throws UndefinedValue.
    double psi(double y) const { return parts_->psi(y); }
    // Membership through the defining function: y in I and x > psi(y).
    bool contains(cplx w) const;
    // Membership through the shape's own set definition when one exists.
    bool set_contains(cplx w) const;

    const std::optional<CatalogShape>& catalog() const { return parts_->catalog; }
    const std::optional<Expr>& psi_expr() const { return parts_->psi_expr; }
    bool has_closed_log_ell() const { return static_cast<bool>(parts_->log_ell); }
    double closed_log_ell(double x) const { return parts_->log_ell(x); }
    const std::vector<double>& special_points() const { return parts_->special_points; }
    const std::string& description() const { return parts_->description; }
    const Parts& parts() const { return *parts_; }

    // Mirror image under y -> -y.
    KoenigsDomain reflected() const;
    // Rigid translation by dx + i dy.
    KoenigsDomain translated(double dx, double dy) const;

private:
    explicit KoenigsDomain(std::shared_ptr<const Parts> p) : parts_(std::move(p)) {}
    std::shared_ptr<const Parts> parts_;
};

SemigroupClass classify(const KoenigsDomain& d);
bool contains_point(const KoenigsDomain& d, cplx w);

// Deterministic sample of ordinates covering the interval (uniform core, geometric tails).
std::vector<double> sample_ordinates(const Interval& I, int n);
// Points near and away from the boundary curve x = psi(y).
std::vector<cplx> sample_points(const KoenigsDomain& d, int samples);

bool positive_direction_check(const KoenigsDomain& d, int samples);
bool positive_direction_check(const std::function<bool(cplx)>& member, const std::vector<cplx>& points);

// Sample-checks psi on the interval. Throws SpecError on undefined or +inf values;
// returns warnings for suspected jumps inside a declared piece.
std::vector<std::string> validate(const KoenigsDomain& d, int samples = 257);

// Translation applied by normalization (positive-step upper domains sit on the real axis).
struct Normalization {
    bool reflected = false;
    double shift_y = 0.0;
};
Normalization normal_form(const KoenigsDomain& d, KoenigsDomain& out);

} // namespace kspec
