#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kspec {

// Extended reals are plain doubles carrying +-infinity; NaN never escapes evaluation.
using ExtendedReal = double;

namespace xr {
ExtendedReal add(ExtendedReal a, ExtendedReal b);
ExtendedReal sub(ExtendedReal a, ExtendedReal b);
ExtendedReal mul(ExtendedReal a, ExtendedReal b);
ExtendedReal div(ExtendedReal a, ExtendedReal b);
ExtendedReal pow(ExtendedReal a, ExtendedReal b);
} // namespace xr

enum class Op { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call, Piecewise };
enum class Fn { Exp, Log, Sin, Cos, Tan, Cot, Sqrt, Abs, Min, Max };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    Op op = Op::Num;
    double value = 0.0;
    Fn fn = Fn::Exp;
    // Call: arguments. Piecewise: branch expressions followed by the default.
    std::vector<NodePtr> args;
    // Piecewise only: half-open [lo, hi) per branch.
    std::vector<std::pair<double, double>> intervals;
};

class Expr {
public:
    Expr() = default;
    Expr(NodePtr root, char variable) : root_(std::move(root)), var_(variable) {}

    const ExprNode& root() const { return *root_; }
    NodePtr root_ptr() const { return root_; }
    // 'x', 'y', or '\0' for a constant expression.
    char variable() const { return var_; }
    bool empty() const { return !root_; }

    ExtendedReal operator()(ExtendedReal v) const;
    std::string str() const;

    static Expr constant(double v);
    // Builds piecewise([([lo,hi), e_i), ...], fallback); intervals must be disjoint.
    static Expr piecewise(const std::vector<std::pair<std::pair<double, double>, Expr>>& branches,
                          const Expr& fallback);

private:
    NodePtr root_;
    char var_ = '\0';
};

Expr parse_expr(std::string_view text);
ExtendedReal eval_expr(const Expr& e, ExtendedReal v);
std::string print_expr(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

// Shortest round-trip decimal for a double, "inf"/"-inf" for infinities.
std::string format_number(double v);

} // namespace kspec
