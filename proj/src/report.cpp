#include "kspec/report.hpp"

#include "kspec/errors.hpp"
#include "kspec/expr.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace kspec {

namespace {

constexpr double kPi = std::numbers::pi;

std::string membership_class(Membership m) { return to_string(m); }

const char* fill_for(Membership m) {
    switch (m) {
    case Membership::In: return "#2b8cbe";
    case Membership::Out: return "#f0f0f0";
    case Membership::Unknown: return "#fdae6b";
    }
    return "#000000";
}

} // namespace

json number_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json angle_json(double v) {
    if (!std::isfinite(v)) return number_json(v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::stod(buf);
}

std::optional<std::string> angle_symbol(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    const double k = v / (kPi / 24.0);
    const double kr = std::round(k);
    if (std::abs(v - kr * kPi / 24.0) > 1e-9) return std::nullopt;
    long n = static_cast<long>(kr), d = 24;
    if (n == 0) return "0";
    long g = std::gcd(std::labs(n), d);
    n /= g;
    d /= g;
    std::string s = n == 1 ? "pi" : n == -1 ? "-pi" : std::to_string(n) + "*pi";
    if (d != 1) s += "/" + std::to_string(d);
    return s;
}

json to_json(const SemigroupClass& c) {
    json j;
    switch (c.kind) {
    case SemigroupClass::Hyperbolic:
        j["class"] = "hyperbolic";
        j["mu"] = number_json(c.mu);
        break;
    case SemigroupClass::ParabolicPositiveStep:
        j["class"] = "parabolic-positive-step";
        j["orientation"] = c.orientation == SemigroupClass::Upper ? "upper" : "lower";
        break;
    case SemigroupClass::ParabolicZeroStep: j["class"] = "parabolic-zero-step"; break;
    }
    return j;
}

json to_json(const Primitive& p, bool symbolic) {
    json j;
    auto angle = [&](const char* key, double v) {
        j[key] = angle_json(v);
        if (symbolic)
            if (auto s = angle_symbol(v)) j[std::string(key) + "_symbolic"] = *s;
    };
    switch (p.kind) {
    case Primitive::Origin: j["kind"] = "origin"; break;
    case Primitive::ArgWedge:
        j["kind"] = "arg_wedge";
        angle("arg_lo", p.lo);
        angle("arg_hi", p.hi);
        j["lo_closed"] = p.lo_closed;
        j["hi_closed"] = p.hi_closed;
        break;
    case Primitive::VerticalStrip:
        j["kind"] = "vertical_strip";
        j["re_lo"] = number_json(p.lo);
        j["re_hi"] = number_json(p.hi);
        j["lo_closed"] = p.lo_closed;
        j["hi_closed"] = p.hi_closed;
        break;
    case Primitive::HalfLine:
        j["kind"] = "half_line";
        angle("direction", p.direction);
        j["origin_included"] = p.origin_included;
        break;
    case Primitive::LeftHalfPlaneOpen: j["kind"] = "left_half_plane_open"; break;
    }
    return j;
}

json to_json(const SpectrumRegion& r, bool symbolic) {
    json cells = json::array();
    for (const auto& c : r.cells()) {
        json parts = json::array();
        for (const auto& p : c.parts) parts.push_back(to_json(p, symbolic));
        cells.push_back({{"intersection", parts}});
    }
    return {{"union", cells}, {"description", r.describe()}};
}

json to_json(const SpectrumBracket& b) {
    json j;
    j["exact"] = b.exact;
    j["case"] = b.case_label;
    if (b.exact) {
        j["region"] = to_json(b.inner, true);
    } else {
        j["inner"] = to_json(b.inner, false);
        j["outer"] = to_json(b.outer, false);
    }
    j["notes"] = b.notes;
    return j;
}

json to_json(const GeometrySummary& g) {
    json j = to_json(g.cls);
    json ell = json::array();
    for (const auto& [x, l] : g.ell_samples) ell.push_back({number_json(x), number_json(l)});
    j["ell_samples"] = ell;
    if (g.W) j["W"] = {{"verdict", to_string(g.W->verdict)}, {"value", number_json(g.W->value)},
                       {"diagnostic", g.W->diagnostic}};
    if (g.delta)
        j["delta"] = {{"liminf", number_json(g.delta->liminf)},
                      {"limsup", number_json(g.delta->limsup)},
                      {"exists", g.delta->exists},
                      {"value", number_json(g.delta->value)}};
    if (g.critical) {
        j["c_critical"] = number_json(g.critical->c);
        j["c_boundary_integral"] = g.critical->boundary ? json(to_string(*g.critical->boundary)) : json("n/a");
    }
    if (g.args) {
        auto bound = [](const ArgBound& b) { return json{{"value", angle_json(b.value)}, {"attained", b.attained}}; };
        j["args"] = {{"theta_minus", bound(g.args->theta_minus)},
                     {"theta_plus", bound(g.args->theta_plus)},
                     {"Theta_minus", bound(g.args->Theta_minus)},
                     {"Theta_plus", bound(g.args->Theta_plus)},
                     {"theta", angle_json(g.args->theta())},
                     {"Theta", angle_json(g.args->Theta())}};
    }
    return j;
}

json to_json(const MembershipResult& m) {
    return {{"verdict", to_string(m.verdict)}, {"source", m.source}, {"detail", m.detail}};
}

json to_json(const AgreementReport& r) {
    json mism = json::array();
    for (const auto& e : r.entries) {
        if (!e.mismatch) continue;
        mism.push_back({{"re", e.lambda.real()},
                        {"im", e.lambda.imag()},
                        {"theorem", to_string(e.theorem)},
                        {"oracle", to_string(e.oracle)},
                        {"boundary_distance", number_json(e.boundary_distance)},
                        {"excused", e.excused}});
    }
    return {{"points", r.entries.size()},  {"agreements", r.agreements},   {"boundary_excused", r.excused},
            {"unexcused", r.unexcused},    {"theorem_unknown", r.theorem_unknown}, {"mismatches", mism}};
}

json to_json(const GrowthReport& g) {
    json j;
    j["space"] = g.space.name();
    j["p"] = g.space.p;
    if (g.space.kind == SpaceSpec::Bergman) j["alpha"] = g.space.alpha;
    j["omega"] = number_json(g.omega);
    j["target_ratio"] = number_json(g.target_ratio);
    j["finite_shift"] = g.finite_shift;
    json samples = json::array();
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        const SpeedSample& s = g.samples[i];
        json e = {{"t", s.t},
                  {"distance", number_json(s.distance)},
                  {"ratio", number_json(s.ratio)},
                  {"spectral_radius", number_json(g.spectral_radius[i].second)}};
        if (g.finite_shift) e["log_ratio"] = number_json(s.log_ratio);
        if (g.space.kind != SpaceSpec::Dirichlet)
            e["norm_bounds"] = {{"lower", number_json(s.bounds.lower)},
                                {"upper", number_json(s.bounds.upper)},
                                {"log_lower", number_json(s.bounds.log_lower)},
                                {"log_upper", number_json(s.bounds.log_upper)},
                                {"sandwich_ok", s.sandwich_ok}};
        samples.push_back(e);
    }
    j["samples"] = samples;
    return j;
}

json spec_json(const LoadedSpec& s) {
    json j;
    j["description"] = s.domain.description();
    j["finite_shift"] = s.finite_shift;
    j["normalization"] = {{"reflected", s.normalization.reflected},
                          {"shift_y", number_json(s.normalization.shift_y)}};
    if (!s.warnings.empty()) j["warnings"] = s.warnings;
    return j;
}

std::string raster_csv(const Raster& r) {
    std::ostringstream out;
    out << "x,y,class\n";
    for (int row = 0; row < r.ny; ++row)
        for (int col = 0; col < r.nx; ++col) {
            cplx c = r.center(row, col);
            out << format_number(c.real()) << ',' << format_number(c.imag()) << ','
                << membership_class(r.cells[static_cast<std::size_t>(row) * r.nx + col]) << '\n';
        }
    return out.str();
}

std::string raster_svg(const Raster& r) {
    constexpr int cell = 8;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << r.nx * cell << "\" height=\"" << r.ny * cell
        << "\" viewBox=\"0 0 " << r.nx * cell << ' ' << r.ny * cell << "\" shape-rendering=\"crispEdges\">\n";
    out << "<title>Re in [" << format_number(r.window.re_lo) << ", " << format_number(r.window.re_hi) << "], Im in ["
        << format_number(r.window.im_lo) << ", " << format_number(r.window.im_hi) << "]</title>\n";
    for (int row = 0; row < r.ny; ++row)
        for (int col = 0; col < r.nx; ++col) {
            Membership m = r.cells[static_cast<std::size_t>(row) * r.nx + col];
            out << "<rect x=\"" << col * cell << "\" y=\"" << row * cell << "\" width=\"" << cell << "\" height=\""
                << cell << "\" class=\"" << membership_class(m) << "\" fill=\"" << fill_for(m) << "\"/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SpecError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw SpecError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw SpecError("cannot move output into place at " + path + ": " + ec.message());
    }
}

} // namespace kspec
