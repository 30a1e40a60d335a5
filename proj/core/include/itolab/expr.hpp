#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace itolab {

enum class Var : std::uint8_t { X, Y, T };
enum class UnaryOp : std::uint8_t { Neg, Sin, Cos, Exp, Abs, Sqrt, Log };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };

struct ExprNode {
    enum class Kind : std::uint8_t { Constant, Variable, Unary, Binary };

    Kind kind = Kind::Constant;
    double value = 0.0;
    Var var = Var::X;
    UnaryOp unary = UnaryOp::Neg;
    BinaryOp binary = BinaryOp::Add;
    std::shared_ptr<const ExprNode> lhs;
    std::shared_ptr<const ExprNode> rhs;
};

/// Immutable arithmetic expression over the variables x, y and t.
///
/// The tree is shared between copies and compiled once to a postfix program,
/// so evaluation is reentrant and allocation-free for shallow expressions.
/// Evaluation never returns NaN or infinity: division by zero, log or sqrt
/// outside their domain, and overflow raise EvalError naming the offending
/// subexpression and the evaluation point.
class FieldExpr {
public:
    // The constant 0.
    FieldExpr();
    static FieldExpr constant(double value);
    static FieldExpr from_node(std::shared_ptr<const ExprNode> root);

    double eval(double x, double y, double t) const;
    // x = state[0], y = state[1] (0 when absent).
    double eval_state(std::span<const double> state, double t) const {
        return eval(state.empty() ? 0.0 : state[0], state.size() > 1 ? state[1] : 0.0, t);
    }

    // Re-parseable text; parse(to_string()) is structurally equal to *this.
    std::string to_string() const;

    const ExprNode& root() const noexcept { return *root_; }
    bool depends_on(Var v) const noexcept;
    bool is_constant() const noexcept;
    // Value when the tree references no variable.
    std::optional<double> constant_value() const;

    // Structural equality of the trees.
    friend bool operator==(const FieldExpr& a, const FieldExpr& b) noexcept;

    // Compiled postfix form; defined in expr.cpp.
    struct Instr;
    struct Program;

private:
    explicit FieldExpr(std::shared_ptr<const ExprNode> root);

    std::shared_ptr<const ExprNode> root_;
    std::shared_ptr<const Program> program_;
};

// Precedence, high to low: ^ (right-assoc), unary minus, * /, + - (left-assoc).
// Functions: sin cos exp abs sqrt log, always with parentheses.
FieldExpr parse(std::string_view source);

std::string to_string(const ExprNode& node);

// Default step (1 + |coordinate|) * scale.
inline constexpr double kGradientStepScale = 1e-5;
inline constexpr double kHessianStepScale = 1e-4;

// Central-difference gradient over the first point.size() coordinates (x, then y).
// h <= 0 selects the scale-aware default per coordinate.
std::vector<double> grad_fd(const FieldExpr& e, std::span<const double> point, double t = 0.0,
                            double h = 0.0);

// Central-difference Hessian, symmetrized as (H + H^T) / 2; row-major d x d.
std::vector<double> hessian_fd(const FieldExpr& e, std::span<const double> point, double t = 0.0,
                               double h = 0.0);

// Evaluates e on an n_per_axis grid spanning [lo, hi] (1 or 2 axes) and throws
// EvalError on the first point where it fails.
void check_finite_on_box(const FieldExpr& e, std::span<const double> lo,
                         std::span<const double> hi, std::size_t n_per_axis, double t = 0.0);

}  // namespace itolab
