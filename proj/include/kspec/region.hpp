#pragma once

#include <complex>
#include <string>
#include <vector>

namespace kspec {

using cplx = std::complex<double>;

enum class Membership { In, Out, Unknown };
std::string to_string(Membership m);

// Angular tolerance for wedge edges and half-lines (radians).
inline constexpr double kAngleTol = 1e-9;

struct Primitive {
    enum Kind { Origin, ArgWedge, VerticalStrip, HalfLine, LeftHalfPlaneOpen };
    Kind kind = Origin;
    // ArgWedge: arguments in radians, lo < hi, measured in [0, 2pi).
    // VerticalStrip: real-part bounds, hi <= 0.
    double lo = 0.0, hi = 0.0;
    bool lo_closed = false, hi_closed = false;
    // HalfLine: direction of {t e^{i direction} : t > 0}.
    double direction = 0.0;
    bool origin_included = false;

    static Primitive origin();
    static Primitive wedge(double lo, double hi, bool lo_closed, bool hi_closed);
    static Primitive strip(double re_lo, double re_hi, bool lo_closed, bool hi_closed);
    static Primitive half_line(double direction, bool origin_included = true);
    static Primitive left_half_plane();

    bool contains(cplx z) const;
    // Euclidean distance from z to the boundary of the primitive.
    double boundary_distance(cplx z) const;
    Primitive conjugated() const;
    std::string describe() const;
};

// Intersection of primitives.
struct Cell {
    std::vector<Primitive> parts;
    bool contains(cplx z) const;
};

// Finite union of cells.
class SpectrumRegion {
public:
    SpectrumRegion() = default;
    explicit SpectrumRegion(std::vector<Cell> cells) : cells_(std::move(cells)) {}

    static SpectrumRegion origin_only();
    // Primitive united with the origin.
    static SpectrumRegion with_origin(const Primitive& p);
    static SpectrumRegion with_origin(const Cell& c);

    bool contains(cplx z) const;
    double boundary_distance(cplx z) const;
    SpectrumRegion conjugated() const;
    const std::vector<Cell>& cells() const { return cells_; }
    std::string describe() const;

private:
    std::vector<Cell> cells_;
};

// Same cells and primitives up to ordering, with parameters equal within tol.
bool equivalent(const SpectrumRegion& a, const SpectrumRegion& b, double tol = 1e-12);

struct SpectrumBracket {
    SpectrumRegion inner, outer;
    bool exact = false;
    // Descriptive label of the theorem case that produced the result, e.g. "tail-area-infinite".
    std::string case_label;
    std::vector<std::string> notes;

    static SpectrumBracket exact_region(SpectrumRegion r, std::string label);
    SpectrumBracket conjugated() const;
};

Membership region_membership(const SpectrumRegion& r, cplx lambda);
Membership region_membership(const SpectrumBracket& b, cplx lambda);

struct Window {
    double re_lo = -1.0, re_hi = 1.0, im_lo = -1.0, im_hi = 1.0;
};

struct Raster {
    Window window;
    int nx = 0, ny = 0;
    // Row-major, row 0 at the top (largest imaginary part).
    std::vector<Membership> cells;
    cplx center(int row, int col) const;
};

Raster raster(const SpectrumBracket& b, const Window& w, int nx, int ny);

} // namespace kspec
