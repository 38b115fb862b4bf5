#include "kspec/commands.hpp"

#include "kspec/conformal.hpp"
#include "kspec/errors.hpp"
#include "kspec/report.hpp"
#include "kspec/spec_io.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace kspec {

namespace {

std::vector<double> parse_list(const std::string& text, std::size_t n, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_constant(item));
    if (v.size() != n) throw SpecError(what + " needs " + std::to_string(n) + " comma-separated values");
    return v;
}

SpaceSpec space_from(const CommandOptions& o) {
    if (o.space == "dirichlet") return SpaceSpec::dirichlet();
    if (o.space == "hardy") return SpaceSpec::hardy(o.p);
    if (o.space == "bergman") return SpaceSpec::bergman(o.p, o.alpha);
    throw SpecError("unknown space \"" + o.space + "\" (expected dirichlet, hardy or bergman)");
}

json envelope(const std::string& command, const LoadedSpec& spec) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"spec", spec_json(spec)}};
}

void emit(const CommandOptions& o, std::ostream& out, const std::string& text) {
    if (o.out.empty())
        out << text;
    else
        write_atomic(o.out, text);
}

void emit_json(const CommandOptions& o, std::ostream& out, const json& j) { emit(o, out, j.dump(2) + "\n"); }

SpectrumBracket spectrum_for(const LoadedSpec& s, const SpaceSpec& space, const CommandOptions& o) {
    if (o.engine != "abscissa" && o.engine != "tail") throw SpecError("engine must be abscissa or tail");
    const auto& cat = s.domain.catalog();
    const bool standard = cat && is_standard_shape(*cat);
    if (o.engine == "tail" && space.kind == SpaceSpec::Dirichlet && !standard &&
        classify(s.domain).kind == SemigroupClass::Hyperbolic)
        return dirichlet_spectrum_hyperbolic_by_W_delta(s.domain, s.geometry);
    return compute_spectrum(s.domain, space, s.finite_shift, s.geometry);
}

int cmd_classify(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    json j = envelope("classify", s);
    j.update(to_json(classify(s.domain)));
    emit_json(o, out, j);
    return kExitOk;
}

int cmd_geometry(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    json j = envelope("geometry", s);
    j.update(to_json(geometry_summary(s.domain, s.geometry)));
    emit_json(o, out, j);
    return kExitOk;
}

int cmd_spectrum(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    SpaceSpec space = space_from(o);
    json j = envelope("spectrum", s);
    j["space"] = space.name();
    j["result"] = to_json(spectrum_for(s, space, o));
    emit_json(o, out, j);
    return kExitOk;
}

int cmd_member(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    SpaceSpec space = space_from(o);
    if (o.lambda.empty()) throw SpecError("member needs --lambda re,im");
    cplx lambda = parse_lambda(o.lambda);
    MembershipResult m;
    if (o.oracle) {
        m = resolve_membership(s.domain, space, lambda, s.finite_shift, s.geometry);
    } else {
        m.verdict = region_membership(spectrum_for(s, space, o), lambda);
        m.source = "region";
    }
    json j = envelope("member", s);
    j["space"] = space.name();
    j["lambda"] = {lambda.real(), lambda.imag()};
    j.update(to_json(m));
    emit_json(o, out, j);
    return kExitOk;
}

int cmd_raster(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    SpaceSpec space = space_from(o);
    auto [nx, ny] = parse_grid(o.grid);
    Raster r = raster(spectrum_for(s, space, o), parse_window(o.window), nx, ny);
    if (o.format == "csv")
        emit(o, out, "# kspec raster schema_version=1\n" + raster_csv(r));
    else if (o.format == "svg")
        emit(o, out, raster_svg(r));
    else
        throw SpecError("raster format must be csv or svg");
    return kExitOk;
}

int cmd_oracle_compare(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    SpaceSpec space = space_from(o);
    auto [nx, ny] = parse_grid(o.grid);
    SpectrumBracket b = spectrum_for(s, space, o);
    AgreementReport rep = oracle_vs_theorem(s.domain, space, b, parse_window(o.window), nx, ny, s.oracle);
    json j = envelope("oracle-compare", s);
    j["space"] = space.name();
    j["boundary_tol"] = s.oracle.boundary_tol;
    j["theorem"] = to_json(b);
    j.update(to_json(rep));
    emit_json(o, out, j);
    return kExitOk;
}

int cmd_growth(const CommandOptions& o, std::ostream& out) {
    LoadedSpec s = load_spec(o.spec_path);
    SpaceSpec space = space_from(o);
    if (!s.domain.catalog()) throw Unsupported("growth needs a catalog shape with a closed-form Koenigs map");
    KoenigsMap m = koenigs_catalog(*s.domain.catalog());
    GrowthReport g = speed_check(m, classify(s.domain), space, o.tmax, s.finite_shift);
    json j = envelope("growth", s);
    j.update(to_json(g));
    emit_json(o, out, j);
    return kExitOk;
}

const std::map<std::string, std::function<int(const CommandOptions&, std::ostream&)>>& table() {
    static const std::map<std::string, std::function<int(const CommandOptions&, std::ostream&)>> t{
        {"classify", cmd_classify}, {"geometry", cmd_geometry},   {"spectrum", cmd_spectrum},
        {"member", cmd_member},     {"raster", cmd_raster},       {"oracle-compare", cmd_oracle_compare},
        {"growth", cmd_growth}};
    return t;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message) {
    err << json{{"schema_version", kSchemaVersion}, {"error", kind}, {"message", message}}.dump() << "\n";
    return code;
}

} // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"classify", "geometry",       "spectrum", "member",
                                                "raster",   "oracle-compare", "growth"};
    return names;
}

cplx parse_lambda(const std::string& text) {
    auto v = parse_list(text, 2, "--lambda");
    return {v[0], v[1]};
}

Window parse_window(const std::string& text) {
    auto v = parse_list(text, 4, "--window");
    Window w{v[0], v[1], v[2], v[3]};
    if (!(w.re_lo < w.re_hi) || !(w.im_lo < w.im_hi)) throw SpecError("--window needs re_lo < re_hi and im_lo < im_hi");
    return w;
}

std::pair<int, int> parse_grid(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int n = std::stoi(item, &used);
            if (used != item.size()) throw SpecError("");
            v.push_back(n);
        } catch (const std::exception&) {
            throw SpecError("--n needs integers, got \"" + text + "\"");
        }
    }
    if (v.size() == 1) v.push_back(v[0]);
    if (v.size() != 2 || v[0] < 2 || v[1] < 2 || v[0] > 4096 || v[1] > 4096)
        throw SpecError("--n needs one or two integers in [2, 4096]");
    return {v[0], v[1]};
}

int run_command(const std::string& name, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    auto it = table().find(name);
    if (it == table().end()) return fail(err, kExitSpec, "spec", "unknown command " + name);
    try {
        return it->second(opts, out);
    } catch (const SpecError& e) {
        return fail(err, kExitSpec, "spec", e.what());
    } catch (const DomainOfValidity& e) {
        return fail(err, kExitSpec, "spec", e.what());
    } catch (const Inconclusive& e) {
        return fail(err, kExitInconclusive, "inconclusive", e.what());
    } catch (const Unsupported& e) {
        return fail(err, kExitUnsupported, "unsupported", e.what());
    } catch (const UndefinedValue& e) {
        return fail(err, kExitSpec, "spec", e.what());
    } catch (const std::exception& e) {
        return fail(err, kExitFailure, "internal", e.what());
    }
}

} // namespace kspec
