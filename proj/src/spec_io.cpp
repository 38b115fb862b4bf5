#include "kspec/spec_io.hpp"

#include "kspec/errors.hpp"
#include "kspec/expr.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace kspec {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw SpecError(where + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw SpecError("unknown key \"" + key + "\" in " + where);
    }
}

double number(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_constant(v.get<std::string>());
    throw SpecError(what + " must be a number or a constant expression string");
}

double required(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw SpecError("missing \"" + std::string(key) + "\" in " + where);
    return number(obj.at(key), where + "." + key);
}

Interval interval_from(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw SpecError(where + " must be a two-element array");
    Interval I{number(v[0], where + "[0]"), number(v[1], where + "[1]")};
    if (!(I.lo < I.hi)) throw SpecError(where + " needs lo < hi");
    return I;
}

Expr expr_in_y(const std::string& text, const std::string& where) {
    Expr e = parse_expr(text);
    if (e.variable() == 'x') throw SpecError(where + " must be an expression in y");
    return e;
}

Expr psi_from(const json& v) {
    if (v.is_string()) return expr_in_y(v.get<std::string>(), "psi");
    reject_unknown(v, {"pieces", "default"}, "psi");
    if (!v.contains("pieces") || !v.at("pieces").is_array()) throw SpecError("psi.pieces must be an array");
    if (!v.contains("default") || !v.at("default").is_string())
        throw SpecError("piecewise psi needs a \"default\" expression string");
    std::vector<std::pair<std::pair<double, double>, Expr>> branches;
    for (const auto& piece : v.at("pieces")) {
        reject_unknown(piece, {"interval", "expr"}, "psi.pieces[]");
        if (!piece.contains("interval") || !piece.contains("expr") || !piece.at("expr").is_string())
            throw SpecError("each psi piece needs \"interval\" and \"expr\"");
        Interval I = interval_from(piece.at("interval"), "psi.pieces[].interval");
        branches.push_back({{I.lo, I.hi}, expr_in_y(piece.at("expr").get<std::string>(), "psi.pieces[].expr")});
    }
    return Expr::piecewise(branches, expr_in_y(v.at("default").get<std::string>(), "psi.default"));
}

CatalogShape catalog_from(const std::string& name, const json& params) {
    const std::string where = "params of " + name;
    auto keys = [&](std::initializer_list<const char*> allowed) { reject_unknown(params, allowed, where); };
    if (name == "strip") {
        keys({"y_lo", "y_hi"});
        return CatalogShape::strip(required(params, "y_lo", where), required(params, "y_hi", where));
    }
    if (name == "half-strip") {
        keys({"x0", "y_lo", "y_hi"});
        return CatalogShape::half_strip(required(params, "x0", where), required(params, "y_lo", where),
                                        required(params, "y_hi", where));
    }
    if (name == "sector") {
        keys({"a", "b", "vertex"});
        cplx vertex{};
        if (params.contains("vertex")) {
            const json& v = params.at("vertex");
            if (!v.is_array() || v.size() != 2) throw SpecError("sector vertex must be [re, im]");
            vertex = {number(v[0], "vertex[0]"), number(v[1], "vertex[1]")};
        }
        return CatalogShape::sector(vertex, required(params, "a", where), required(params, "b", where));
    }
    if (name == "upper-half-plane") {
        keys({});
        return CatalogShape::upper_half_plane();
    }
    if (name == "sigma-eps" || name == "sigma-eps-damped") {
        keys({"eps"});
        double eps = required(params, "eps", where);
        return name == "sigma-eps" ? CatalogShape::sigma_eps(eps) : CatalogShape::sigma_eps_damped(eps);
    }
    if (name == "exp-upper") {
        keys({"alpha"});
        return CatalogShape::exp_upper(required(params, "alpha", where));
    }
    if (name == "exp-symmetric") {
        keys({});
        return CatalogShape::exp_symmetric();
    }
    if (name == "cot-log") {
        keys({"x"});
        return CatalogShape::cot_log(required(params, "x", where));
    }
    if (name == "nonexistent-delta") {
        keys({});
        return CatalogShape::nonexistent_delta();
    }
    throw SpecError("unknown catalog shape \"" + name + "\"");
}

void tolerances_from(const json& t, GeometryOptions& g, OracleOptions& o) {
    reject_unknown(t, {"tol_measure", "tol_delta", "tol_c", "K", "boundary_tol", "oracle_K"}, "tolerances");
    auto positive = [&](const char* key, double& dst) {
        if (!t.contains(key)) return;
        double v = number(t.at(key), key);
        if (!(v > 0.0)) throw SpecError(std::string("tolerance ") + key + " must be positive");
        dst = v;
    };
    auto levels = [&](const char* key, int& dst) {
        if (!t.contains(key)) return;
        if (!t.at(key).is_number_integer()) throw SpecError(std::string(key) + " must be an integer");
        int v = t.at(key).get<int>();
        if (v < 4 || v > 60) throw SpecError(std::string(key) + " must lie in [4, 60]");
        dst = v;
    };
    positive("tol_measure", g.tol_measure);
    positive("tol_delta", g.tol_delta);
    positive("tol_c", g.tol_c);
    positive("boundary_tol", o.boundary_tol);
    levels("K", g.K);
    levels("oracle_K", o.K);
}

} // namespace

double parse_constant(const std::string& text) {
    Expr e = parse_expr(text);
    if (e.variable() != '\0') throw SpecError("\"" + text + "\" is not a constant expression");
    try {
        return e(0.0);
    } catch (const UndefinedValue& u) {
        throw SpecError("\"" + text + "\" is undefined: " + u.reason());
    }
}

LoadedSpec parse_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(doc, {"domain", "finite_shift", "tolerances"}, "spec");
    if (!doc.contains("domain")) throw SpecError("spec needs a \"domain\" object");
    const json& dom = doc.at("domain");
    if (!dom.is_object() || !dom.contains("type") || !dom.at("type").is_string())
        throw SpecError("domain needs a string \"type\"");
    const std::string type = dom.at("type").get<std::string>();

    std::optional<KoenigsDomain> domain;
    if (type == "defining_function") {
        reject_unknown(dom, {"type", "interval", "psi"}, "domain");
        if (!dom.contains("interval") || !dom.contains("psi")) throw SpecError("domain needs \"interval\" and \"psi\"");
        domain = KoenigsDomain::from_defining_function(interval_from(dom.at("interval"), "domain.interval"),
                                                       psi_from(dom.at("psi")));
    } else if (type == "catalog") {
        reject_unknown(dom, {"type", "name", "params"}, "domain");
        if (!dom.contains("name") || !dom.at("name").is_string()) throw SpecError("catalog domain needs a \"name\"");
        json params = dom.contains("params") ? dom.at("params") : json::object();
        domain = KoenigsDomain::from_catalog(catalog_from(dom.at("name").get<std::string>(), params));
    } else {
        throw SpecError("unknown domain type \"" + type + "\"");
    }

    LoadedSpec out(*domain);
    if (doc.contains("finite_shift")) {
        if (!doc.at("finite_shift").is_boolean()) throw SpecError("finite_shift must be a boolean");
        out.finite_shift = doc.at("finite_shift").get<bool>();
    }
    if (doc.contains("tolerances")) tolerances_from(doc.at("tolerances"), out.geometry, out.oracle);

    out.warnings = validate(out.domain);
    if (!out.domain.catalog()) {
        KoenigsDomain normal = out.domain;
        Normalization n = normal_form(out.domain, normal);
        out.normalization.reflected = n.reflected;
        // Translation leaves every spectrum unchanged; reflection is undone inside the spectrum engines.
        if (!n.reflected && n.shift_y != 0.0) {
            out.domain = normal;
            out.normalization.shift_y = n.shift_y;
        }
    } else {
        out.normalization.reflected = classify(out.domain).kind == SemigroupClass::ParabolicPositiveStep &&
                                      classify(out.domain).orientation == SemigroupClass::Lower;
    }
    return out;
}

LoadedSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot read spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

} // namespace kspec
