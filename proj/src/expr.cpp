#include "kspec/expr.hpp"

#include "kspec/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace kspec {

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : SpecError([&] {
          std::ostringstream os;
          os << "syntax error at offset " << offset << ": " << detail;
          if (!expected.empty()) {
              os << " (expected ";
              for (std::size_t i = 0; i < expected.size(); ++i)
                  os << (i ? ", " : "") << expected[i];
              os << ")";
          }
          return os.str();
      }()),
      offset_(offset), expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, const std::string& name)
    : SpecError("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset), name_(name) {}

UndefinedValue::UndefinedValue(double point, const std::string& reason)
    : std::domain_error("undefined value at " + format_number(point) + ": " + reason),
      point_(point), reason_(reason) {}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

namespace xr {

namespace {
[[noreturn]] void undefined(const char* why) { throw UndefinedValue(std::numeric_limits<double>::quiet_NaN(), why); }
} // namespace

ExtendedReal add(ExtendedReal a, ExtendedReal b) {
    if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) undefined("inf + (-inf)");
    return a + b;
}

ExtendedReal sub(ExtendedReal a, ExtendedReal b) { return add(a, -b); }

ExtendedReal mul(ExtendedReal a, ExtendedReal b) {
    if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a))) return 0.0;
    return a * b;
}

ExtendedReal div(ExtendedReal a, ExtendedReal b) {
    if (b == 0.0) undefined("division by zero");
    if (std::isinf(a) && std::isinf(b)) undefined("inf / inf");
    return a / b;
}

ExtendedReal pow(ExtendedReal a, ExtendedReal b) {
    if (a == 0.0 && b < 0.0) undefined("zero to a negative power");
    if (a < 0.0 && std::isfinite(b) && b != std::floor(b)) undefined("negative base, fractional exponent");
    double r = std::pow(a, b);
    if (std::isnan(r)) undefined("pow");
    return r;
}

} // namespace xr

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Token {
    enum Kind { Number, Ident, Sym, End } kind = End;
    std::string text;
    double number = 0.0;
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= s_.size()) return;
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < s_.size() &&
                                                             std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                std::size_t save = pos_;
                ++pos_;
                if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            tok_.kind = Token::Number;
            tok_.text = std::string(s_.substr(start, pos_ - start));
            double v = 0.0;
            auto res = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), v);
            if (res.ec != std::errc() || res.ptr != tok_.text.data() + tok_.text.size())
                throw SyntaxError(start, {"number"}, "malformed number '" + tok_.text + "'");
            tok_.number = v;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            tok_.kind = Token::Ident;
            tok_.text = std::string(s_.substr(start, pos_ - start));
            return;
        }
        static constexpr std::string_view syms = "+-*/^()[],";
        if (syms.find(c) != std::string_view::npos) {
            tok_.kind = Token::Sym;
            tok_.text = std::string(1, c);
            ++pos_;
            return;
        }
        throw SyntaxError(pos_, {}, std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    Token tok_;
};

NodePtr make_num(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Num;
    n->value = v;
    return n;
}

NodePtr make_var(char v) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Var;
    n->value = static_cast<double>(v);
    return n;
}

std::optional<double> fold_binary(Op op, double a, double b) {
    try {
        double r = 0.0;
        switch (op) {
        case Op::Add: r = xr::add(a, b); break;
        case Op::Sub: r = xr::sub(a, b); break;
        case Op::Mul: r = xr::mul(a, b); break;
        case Op::Div: r = xr::div(a, b); break;
        case Op::Pow: r = xr::pow(a, b); break;
        default: return std::nullopt;
        }
        if (std::isnan(r)) return std::nullopt;
        return r;
    } catch (const UndefinedValue&) {
        return std::nullopt;
    }
}

NodePtr make_binary(Op op, NodePtr l, NodePtr r) {
    if (l->op == Op::Num && r->op == Op::Num) {
        if (auto v = fold_binary(op, l->value, r->value)) return make_num(*v);
    }
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = {std::move(l), std::move(r)};
    return n;
}

NodePtr make_neg(NodePtr c) {
    if (c->op == Op::Num) return make_num(-c->value);
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Neg;
    n->args = {std::move(c)};
    return n;
}

struct FnInfo {
    std::string_view name;
    Fn fn;
    int arity;
};

constexpr std::array<FnInfo, 10> kFunctions{{{"exp", Fn::Exp, 1},
                                             {"log", Fn::Log, 1},
                                             {"sin", Fn::Sin, 1},
                                             {"cos", Fn::Cos, 1},
                                             {"tan", Fn::Tan, 1},
                                             {"cot", Fn::Cot, 1},
                                             {"sqrt", Fn::Sqrt, 1},
                                             {"abs", Fn::Abs, 1},
                                             {"min", Fn::Min, 2},
                                             {"max", Fn::Max, 2}}};

const FnInfo* find_fn(std::string_view name) {
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

std::string_view fn_name(Fn fn) {
    for (const auto& f : kFunctions)
        if (f.fn == fn) return f.name;
    return "?";
}

const std::vector<std::string> kPrimaryExpected{"number", "identifier", "'('", "'-'"};

class Parser {
public:
    explicit Parser(std::string_view s) : lex_(s) {}

    Expr parse() {
        NodePtr root = expr();
        if (lex_.peek().kind != Token::End)
            throw SyntaxError(lex_.peek().offset, {"operator", "end of input"}, "unexpected '" + lex_.peek().text + "'");
        return Expr(root, var_);
    }

private:
    bool is_sym(const char* s) const { return lex_.peek().kind == Token::Sym && lex_.peek().text == s; }

    void expect(const char* s) {
        if (!is_sym(s)) {
            const Token& t = lex_.peek();
            throw SyntaxError(t.offset, {std::string("'") + s + "'"},
                              t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
        lex_.take();
    }

    NodePtr expr() {
        NodePtr lhs = term();
        while (is_sym("+") || is_sym("-")) {
            Op op = lex_.take().text == "+" ? Op::Add : Op::Sub;
            lhs = make_binary(op, lhs, term());
        }
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        while (is_sym("*") || is_sym("/")) {
            Op op = lex_.take().text == "*" ? Op::Mul : Op::Div;
            lhs = make_binary(op, lhs, unary());
        }
        return lhs;
    }

    NodePtr unary() {
        if (is_sym("-")) {
            lex_.take();
            return make_neg(unary());
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (is_sym("^")) {
            lex_.take();
            return make_binary(Op::Pow, base, unary());
        }
        return base;
    }

    NodePtr primary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Number) return make_num(lex_.take().number);
        if (is_sym("(")) {
            lex_.take();
            NodePtr e = expr();
            expect(")");
            return e;
        }
        if (t.kind == Token::Ident) {
            Token id = lex_.take();
            if (id.text == "pi") return make_num(std::numbers::pi);
            if (id.text == "e") return make_num(std::numbers::e);
            if (id.text == "inf") return make_num(kInf);
            if (id.text == "x" || id.text == "y") {
                char v = id.text[0];
                if (var_ != '\0' && var_ != v)
                    throw SyntaxError(id.offset, {std::string(1, var_)}, "expression mixes free variables x and y");
                var_ = v;
                return make_var(v);
            }
            if (id.text == "piecewise") return piecewise(id);
            if (const FnInfo* f = find_fn(id.text)) {
                if (!is_sym("("))
                    throw SyntaxError(lex_.peek().offset, {"'('"}, "function '" + id.text + "' must be called");
                lex_.take();
                auto n = std::make_shared<ExprNode>();
                n->op = Op::Call;
                n->fn = f->fn;
                for (int i = 0; i < f->arity; ++i) {
                    if (i > 0) expect(",");
                    n->args.push_back(expr());
                }
                expect(")");
                return n;
            }
            throw UnknownIdentifier(id.offset, id.text);
        }
        throw SyntaxError(t.offset, kPrimaryExpected,
                          t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }

    double constant_bound() {
        std::size_t at = lex_.peek().offset;
        NodePtr b = expr();
        if (b->op != Op::Num) throw SyntaxError(at, {"constant"}, "piecewise interval bounds must be constant");
        return b->value;
    }

    NodePtr piecewise(const Token& id) {
        expect("(");
        expect("[");
        auto n = std::make_shared<ExprNode>();
        n->op = Op::Piecewise;
        bool first = true;
        while (!is_sym("]")) {
            if (!first) expect(",");
            first = false;
            std::size_t at = lex_.peek().offset;
            expect("(");
            expect("[");
            double lo = constant_bound();
            expect(",");
            double hi = constant_bound();
            expect(")");
            expect(",");
            NodePtr branch = expr();
            expect(")");
            if (!(lo < hi)) throw SyntaxError(at, {}, "piecewise interval must satisfy lo < hi");
            for (const auto& [a, b] : n->intervals)
                if (lo < b && a < hi) throw SyntaxError(at, {}, "piecewise intervals overlap");
            n->intervals.emplace_back(lo, hi);
            n->args.push_back(branch);
        }
        expect("]");
        expect(",");
        n->args.push_back(expr());
        expect(")");
        if (n->intervals.empty()) throw SyntaxError(id.offset, {"branch"}, "piecewise needs at least one branch");
        return n;
    }

    Lexer lex_;
    char var_ = '\0';
};

double eval_node(const ExprNode& n, double v) {
    switch (n.op) {
    case Op::Num: return n.value;
    case Op::Var: return v;
    case Op::Neg: return -eval_node(*n.args[0], v);
    case Op::Add: return xr::add(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::Sub: return xr::sub(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::Mul: return xr::mul(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::Div: return xr::div(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::Pow: return xr::pow(eval_node(*n.args[0], v), eval_node(*n.args[1], v));
    case Op::Piecewise: {
        for (std::size_t i = 0; i < n.intervals.size(); ++i)
            if (n.intervals[i].first <= v && v < n.intervals[i].second) return eval_node(*n.args[i], v);
        return eval_node(*n.args.back(), v);
    }
    case Op::Call: break;
    }
    double a = eval_node(*n.args[0], v);
    switch (n.fn) {
    case Fn::Exp: return std::exp(a);
    case Fn::Log:
        if (a < 0.0) throw UndefinedValue(v, "log of a negative number");
        if (a == 0.0) return -kInf;
        return std::log(a);
    case Fn::Sin:
    case Fn::Cos:
    case Fn::Tan:
    case Fn::Cot: {
        if (!std::isfinite(a)) throw UndefinedValue(v, "trigonometric function of an infinite argument");
        double s = std::sin(a), c = std::cos(a);
        double pole_tol = 1e-14 * std::max(1.0, std::abs(a));
        if (n.fn == Fn::Sin) return s;
        if (n.fn == Fn::Cos) return c;
        if (n.fn == Fn::Tan) {
            if (std::abs(c) <= pole_tol) throw UndefinedValue(v, "tan at a pole");
            return s / c;
        }
        if (std::abs(s) <= pole_tol) throw UndefinedValue(v, "cot at a pole");
        return c / s;
    }
    case Fn::Sqrt:
        if (a < 0.0) throw UndefinedValue(v, "sqrt of a negative number");
        return std::sqrt(a);
    case Fn::Abs: return std::abs(a);
    case Fn::Min: return std::min(a, eval_node(*n.args[1], v));
    case Fn::Max: return std::max(a, eval_node(*n.args[1], v));
    }
    return 0.0;
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.op) {
    case Op::Num:
        if (n.value < 0.0 || (n.value == 0.0 && std::signbit(n.value)))
            out += "(-" + format_number(-n.value) + ")";
        else
            out += format_number(n.value);
        return;
    case Op::Var: out += static_cast<char>(n.value); return;
    case Op::Neg:
        out += "(-";
        print_node(*n.args[0], out);
        out += ")";
        return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow: {
        static constexpr std::string_view ops[] = {" + ", " - ", " * ", " / ", " ^ "};
        out += "(";
        print_node(*n.args[0], out);
        out += ops[static_cast<int>(n.op) - static_cast<int>(Op::Add)];
        print_node(*n.args[1], out);
        out += ")";
        return;
    }
    case Op::Call:
        out += fn_name(n.fn);
        out += "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) out += ", ";
            print_node(*n.args[i], out);
        }
        out += ")";
        return;
    case Op::Piecewise:
        out += "piecewise([";
        for (std::size_t i = 0; i < n.intervals.size(); ++i) {
            if (i) out += ", ";
            out += "([";
            print_node(*make_num(n.intervals[i].first), out);
            out += ", ";
            print_node(*make_num(n.intervals[i].second), out);
            out += "), ";
            print_node(*n.args[i], out);
            out += ")";
        }
        out += "], ";
        print_node(*n.args.back(), out);
        out += ")";
        return;
    }
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
    if (a.op != b.op) return false;
    if (a.op == Op::Num || a.op == Op::Var) {
        if (std::isnan(a.value) || std::isnan(b.value)) return false;
        return a.value == b.value;
    }
    if (a.op == Op::Call && a.fn != b.fn) return false;
    if (a.intervals != b.intervals) return false;
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal_nodes(*a.args[i], *b.args[i])) return false;
    return true;
}

} // namespace

ExtendedReal Expr::operator()(ExtendedReal v) const { return eval_expr(*this, v); }

std::string Expr::str() const { return print_expr(*this); }

Expr Expr::constant(double v) { return Expr(make_num(v), '\0'); }

Expr Expr::piecewise(const std::vector<std::pair<std::pair<double, double>, Expr>>& branches, const Expr& fallback) {
    auto n = std::make_shared<ExprNode>();
    n->op = Op::Piecewise;
    char var = fallback.variable();
    auto merge = [&](char v) {
        if (v == '\0') return;
        if (var != '\0' && var != v) throw SpecError("piecewise branches mix free variables x and y");
        var = v;
    };
    for (const auto& [iv, e] : branches) {
        if (!(iv.first < iv.second)) throw SpecError("piecewise interval must satisfy lo < hi");
        for (const auto& [a, b] : n->intervals)
            if (iv.first < b && a < iv.second) throw SpecError("piecewise intervals overlap");
        merge(e.variable());
        n->intervals.push_back(iv);
        n->args.push_back(e.root_ptr());
    }
    if (branches.empty()) throw SpecError("piecewise needs at least one branch");
    n->args.push_back(fallback.root_ptr());
    return Expr(n, var);
}

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

ExtendedReal eval_expr(const Expr& e, ExtendedReal v) {
    try {
        double r = eval_node(e.root(), v);
        if (std::isnan(r)) throw UndefinedValue(v, "not a number");
        return r;
    } catch (const UndefinedValue& u) {
        if (std::isnan(u.point())) throw UndefinedValue(v, u.reason());
        throw;
    }
}

std::string print_expr(const Expr& e) {
    std::string out;
    print_node(e.root(), out);
    return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return a.variable() == b.variable() && equal_nodes(a.root(), b.root());
}

} // namespace kspec
