#include "itolab/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "itolab/errors.hpp"

namespace itolab {

// ---------------------------------------------------------------------------
// Compiled form

struct FieldExpr::Instr {
    enum class Code : std::uint8_t { Push, LoadX, LoadY, LoadT, Unary, Binary };
    Code code;
    UnaryOp unary;
    BinaryOp binary;
    double value;
    const ExprNode* node;
};

struct FieldExpr::Program {
    std::vector<Instr> code;
    std::size_t max_stack = 0;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_constant(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Constant;
    n->value = v;
    return n;
}

NodePtr make_variable(Var v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Variable;
    n->var = v;
    return n;
}

NodePtr make_unary(UnaryOp op, NodePtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Unary;
    n->unary = op;
    n->lhs = std::move(arg);
    return n;
}

NodePtr make_binary(BinaryOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::Binary;
    n->binary = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

std::size_t compile(const ExprNode& node, std::vector<FieldExpr::Instr>& out, std::size_t depth,
                    std::size_t& max_stack);

const char* function_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Abs: return "abs";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Log: return "log";
        case UnaryOp::Neg: return "-";
    }
    return "?";
}

std::optional<UnaryOp> function_from_name(std::string_view name) {
    if (name == "sin") return UnaryOp::Sin;
    if (name == "cos") return UnaryOp::Cos;
    if (name == "exp") return UnaryOp::Exp;
    if (name == "abs") return UnaryOp::Abs;
    if (name == "sqrt") return UnaryOp::Sqrt;
    if (name == "log") return UnaryOp::Log;
    return std::nullopt;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

// Printing precedence: 1 = + -, 2 = * /, 3 = unary minus, 4 = ^, 5 = atom.
int precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprNode::Kind::Constant: return n.value < 0.0 ? 3 : 5;
        case ExprNode::Kind::Variable: return 5;
        case ExprNode::Kind::Unary: return n.unary == UnaryOp::Neg ? 3 : 5;
        case ExprNode::Kind::Binary:
            switch (n.binary) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
    }
    return 5;
}

void print(const ExprNode& n, std::string& out);

void print_wrapped(const ExprNode& n, bool parens, std::string& out) {
    if (parens) out += '(';
    print(n, out);
    if (parens) out += ')';
}

void print(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprNode::Kind::Constant:
            if (n.value < 0.0) {
                out += '(';
                out += format_number(n.value);
                out += ')';
            } else {
                out += format_number(n.value);
            }
            return;
        case ExprNode::Kind::Variable:
            out += n.var == Var::X ? 'x' : (n.var == Var::Y ? 'y' : 't');
            return;
        case ExprNode::Kind::Unary:
            if (n.unary == UnaryOp::Neg) {
                out += '-';
                print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
            } else {
                out += function_name(n.unary);
                out += '(';
                print(*n.lhs, out);
                out += ')';
            }
            return;
        case ExprNode::Kind::Binary: {
            const int p = precedence(n);
            if (n.binary == BinaryOp::Pow) {
                print_wrapped(*n.lhs, precedence(*n.lhs) <= 4, out);
                out += '^';
                print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
                return;
            }
            print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
            switch (n.binary) {
                case BinaryOp::Add: out += " + "; break;
                case BinaryOp::Sub: out += " - "; break;
                case BinaryOp::Mul: out += '*'; break;
                case BinaryOp::Div: out += '/'; break;
                case BinaryOp::Pow: break;
            }
            print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
            return;
        }
    }
}

bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::Constant: return a.value == b.value;
        case ExprNode::Kind::Variable: return a.var == b.var;
        case ExprNode::Kind::Unary:
            return a.unary == b.unary && structurally_equal(*a.lhs, *b.lhs);
        case ExprNode::Kind::Binary:
            return a.binary == b.binary && structurally_equal(*a.lhs, *b.lhs) &&
                   structurally_equal(*a.rhs, *b.rhs);
    }
    return false;
}

bool references(const ExprNode& n, Var v) {
    switch (n.kind) {
        case ExprNode::Kind::Constant: return false;
        case ExprNode::Kind::Variable: return n.var == v;
        case ExprNode::Kind::Unary: return references(*n.lhs, v);
        case ExprNode::Kind::Binary: return references(*n.lhs, v) || references(*n.rhs, v);
    }
    return false;
}

std::size_t compile(const ExprNode& node, std::vector<FieldExpr::Instr>& out, std::size_t depth,
                    std::size_t& max_stack) {
    using Code = FieldExpr::Instr::Code;
    max_stack = std::max(max_stack, depth + 1);
    FieldExpr::Instr ins{Code::Push, UnaryOp::Neg, BinaryOp::Add, 0.0, &node};
    switch (node.kind) {
        case ExprNode::Kind::Constant:
            ins.value = node.value;
            break;
        case ExprNode::Kind::Variable:
            ins.code = node.var == Var::X ? Code::LoadX : (node.var == Var::Y ? Code::LoadY : Code::LoadT);
            break;
        case ExprNode::Kind::Unary:
            compile(*node.lhs, out, depth, max_stack);
            ins.code = Code::Unary;
            ins.unary = node.unary;
            break;
        case ExprNode::Kind::Binary:
            compile(*node.lhs, out, depth, max_stack);
            compile(*node.rhs, out, depth + 1, max_stack);
            ins.code = Code::Binary;
            ins.binary = node.binary;
            break;
    }
    out.push_back(ins);
    return out.size();
}

[[noreturn]] void domain_error(const char* what, const ExprNode& node, double x, double y,
                               double t) {
    std::string sub = to_string(node);
    char point[160];
    std::snprintf(point, sizeof point, " at (x=%.17g, y=%.17g, t=%.17g)", x, y, t);
    throw EvalError(std::string("domain error: ") + what + " in '" + sub + "'" + point, sub);
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError("empty expression", pos_);
        }
        NodePtr root = parse_sum();
        skip_ws();
        if (pos_ < src_.size()) {
            if (src_[pos_] == ')') {
                throw ParseError("unbalanced parentheses: unexpected ')'", pos_);
            }
            throw ParseError(std::string("unexpected trailing token '") + src_[pos_] + "'", pos_);
        }
        return root;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Add, lhs, parse_product());
            } else if (peek('-')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (peek('*')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Mul, lhs, parse_unary());
            } else if (peek('/')) {
                ++pos_;
                lhs = make_binary(BinaryOp::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_unary() {
        if (peek('-')) {
            ++pos_;
            return make_unary(UnaryOp::Neg, parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (peek('^')) {
            ++pos_;
            return make_binary(BinaryOp::Pow, base, parse_unary());
        }
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError("empty operand: unexpected end of input", pos_);
        }
        const char c = src_[pos_];
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            NodePtr inner = parse_sum();
            if (!peek(')')) {
                throw ParseError("unbalanced parentheses: '(' opened at " + std::to_string(open) +
                                     " is not closed",
                                 pos_);
            }
            ++pos_;
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        if (c == ')') {
            throw ParseError("empty operand before ')'", pos_);
        }
        if (c == '+' || c == '*' || c == '/' || c == '^') {
            throw ParseError(std::string("empty operand before '") + c + "'", pos_);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.')) {
            ++end;
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t exp = end + 1;
            if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
            if (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) {
                while (exp < src_.size() && std::isdigit(static_cast<unsigned char>(src_[exp]))) ++exp;
                end = exp;
            }
        }
        double value = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + end, value);
        if (res.ec != std::errc() || res.ptr != src_.data() + end) {
            throw ParseError("malformed number '" + std::string(src_.substr(start, end - start)) + "'",
                             start);
        }
        if (!std::isfinite(value)) {
            throw ParseError("number out of range", start);
        }
        pos_ = end;
        return make_constant(value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "x") return make_variable(Var::X);
        if (name == "y") return make_variable(Var::Y);
        if (name == "t") return make_variable(Var::T);
        if (auto fn = function_from_name(name)) {
            if (!peek('(')) {
                throw ParseError("function '" + std::string(name) + "' requires parentheses", pos_);
            }
            const std::size_t open = pos_;
            ++pos_;
            NodePtr arg = parse_sum();
            if (!peek(')')) {
                throw ParseError("unbalanced parentheses: '(' opened at " + std::to_string(open) +
                                     " is not closed",
                                 pos_);
            }
            ++pos_;
            return make_unary(*fn, arg);
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

FieldExpr::FieldExpr() : FieldExpr(make_constant(0.0)) {}

FieldExpr::FieldExpr(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {
    auto program = std::make_shared<Program>();
    compile(*root_, program->code, 0, program->max_stack);
    program_ = std::move(program);
}

FieldExpr FieldExpr::constant(double value) {
    return FieldExpr(make_constant(value));
}

FieldExpr FieldExpr::from_node(std::shared_ptr<const ExprNode> root) {
    if (!root) {
        throw InvalidParameter("FieldExpr::from_node: null tree");
    }
    return FieldExpr(std::move(root));
}

double FieldExpr::eval(double x, double y, double t) const {
    constexpr std::size_t kInline = 32;
    std::array<double, kInline> inline_stack{};
    std::vector<double> heap_stack;
    double* stack = inline_stack.data();
    if (program_->max_stack > kInline) {
        heap_stack.resize(program_->max_stack);
        stack = heap_stack.data();
    }
    std::size_t sp = 0;
    for (const Instr& ins : program_->code) {
        switch (ins.code) {
            case Instr::Code::Push: stack[sp++] = ins.value; break;
            case Instr::Code::LoadX: stack[sp++] = x; break;
            case Instr::Code::LoadY: stack[sp++] = y; break;
            case Instr::Code::LoadT: stack[sp++] = t; break;
            case Instr::Code::Unary: {
                double& a = stack[sp - 1];
                switch (ins.unary) {
                    case UnaryOp::Neg: a = -a; break;
                    case UnaryOp::Sin: a = std::sin(a); break;
                    case UnaryOp::Cos: a = std::cos(a); break;
                    case UnaryOp::Exp: a = std::exp(a); break;
                    case UnaryOp::Abs: a = std::fabs(a); break;
                    case UnaryOp::Sqrt:
                        if (a < 0.0) domain_error("sqrt of a negative value", *ins.node, x, y, t);
                        a = std::sqrt(a);
                        break;
                    case UnaryOp::Log:
                        if (!(a > 0.0)) domain_error("log of a non-positive value", *ins.node, x, y, t);
                        a = std::log(a);
                        break;
                }
                if (!std::isfinite(a)) domain_error("non-finite result", *ins.node, x, y, t);
                break;
            }
            case Instr::Code::Binary: {
                const double b = stack[--sp];
                double& a = stack[sp - 1];
                switch (ins.binary) {
                    case BinaryOp::Add: a += b; break;
                    case BinaryOp::Sub: a -= b; break;
                    case BinaryOp::Mul: a *= b; break;
                    case BinaryOp::Div:
                        if (b == 0.0) domain_error("division by zero", *ins.node, x, y, t);
                        a /= b;
                        break;
                    case BinaryOp::Pow:
                        if (b == 2.0) {
                            a *= a;
                        } else {
                            a = std::pow(a, b);
                        }
                        break;
                }
                if (!std::isfinite(a)) domain_error("non-finite result", *ins.node, x, y, t);
                break;
            }
        }
    }
    return stack[0];
}

std::string FieldExpr::to_string() const {
    return itolab::to_string(*root_);
}

bool FieldExpr::depends_on(Var v) const noexcept {
    return references(*root_, v);
}

bool FieldExpr::is_constant() const noexcept {
    return !depends_on(Var::X) && !depends_on(Var::Y) && !depends_on(Var::T);
}

std::optional<double> FieldExpr::constant_value() const {
    if (!is_constant()) {
        return std::nullopt;
    }
    return eval(0.0, 0.0, 0.0);
}

bool operator==(const FieldExpr& a, const FieldExpr& b) noexcept {
    return a.root_ == b.root_ || structurally_equal(*a.root_, *b.root_);
}

FieldExpr parse(std::string_view source) {
    return FieldExpr::from_node(Parser(source).parse_all());
}

std::string to_string(const ExprNode& node) {
    std::string out;
    print(node, out);
    return out;
}

// ---------------------------------------------------------------------------
// Finite differences

namespace {

double step_for(double coordinate, double h, double scale) {
    return h > 0.0 ? h : (1.0 + std::fabs(coordinate)) * scale;
}

double eval_point(const FieldExpr& e, const std::array<double, 2>& p, double t) {
    return e.eval(p[0], p[1], t);
}

std::array<double, 2> to_xy(std::span<const double> point) {
    if (point.empty() || point.size() > 2) {
        throw DimensionError("finite differences support 1 or 2 spatial coordinates");
    }
    return {point[0], point.size() > 1 ? point[1] : 0.0};
}

}  // namespace

std::vector<double> grad_fd(const FieldExpr& e, std::span<const double> point, double t, double h) {
    if (h < 0.0) {
        throw InvalidParameter("grad_fd: step must be positive");
    }
    const auto base = to_xy(point);
    std::vector<double> grad(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double hi = step_for(base[i], h, kGradientStepScale);
        auto plus = base;
        auto minus = base;
        plus[i] += hi;
        minus[i] -= hi;
        grad[i] = (eval_point(e, plus, t) - eval_point(e, minus, t)) / (plus[i] - minus[i]);
    }
    return grad;
}

std::vector<double> hessian_fd(const FieldExpr& e, std::span<const double> point, double t,
                               double h) {
    if (h < 0.0) {
        throw InvalidParameter("hessian_fd: step must be positive");
    }
    const auto base = to_xy(point);
    const std::size_t d = point.size();
    std::array<double, 2> steps{};
    for (std::size_t i = 0; i < d; ++i) {
        steps[i] = step_for(base[i], h, kHessianStepScale);
    }
    const double f0 = eval_point(e, base, t);
    std::vector<double> hess(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        auto plus = base;
        auto minus = base;
        plus[i] += steps[i];
        minus[i] -= steps[i];
        hess[i * d + i] =
            (eval_point(e, plus, t) - 2.0 * f0 + eval_point(e, minus, t)) / (steps[i] * steps[i]);
    }
    if (d == 2) {
        auto corner = [&](double si, double sj) {
            auto p = base;
            p[0] += si * steps[0];
            p[1] += sj * steps[1];
            return eval_point(e, p, t);
        };
        const double mixed = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) /
                             (4.0 * steps[0] * steps[1]);
        // The cross stencil is symmetric by construction, so (H + H^T)/2 is H.
        hess[1] = mixed;
        hess[2] = mixed;
    }
    return hess;
}

void check_finite_on_box(const FieldExpr& e, std::span<const double> lo, std::span<const double> hi,
                         std::size_t n_per_axis, double t) {
    if (lo.size() != hi.size() || lo.empty() || lo.size() > 2) {
        throw DimensionError("check_finite_on_box: box must have 1 or 2 axes");
    }
    if (n_per_axis < 2) {
        throw InvalidParameter("check_finite_on_box: need at least 2 points per axis");
    }
    auto coord = [&](std::size_t axis, std::size_t k) {
        return lo[axis] + (hi[axis] - lo[axis]) * static_cast<double>(k) /
                              static_cast<double>(n_per_axis - 1);
    };
    const std::size_t ny = lo.size() == 2 ? n_per_axis : 1;
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = lo.size() == 2 ? coord(1, j) : 0.0;
        for (std::size_t i = 0; i < n_per_axis; ++i) {
            e.eval(coord(0, i), y, t);
        }
    }
}

}  // namespace itolab
