#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "itolab/errors.hpp"
#include "itolab/expr.hpp"

using namespace itolab;

TEST(Parse, Precedence) {
    EXPECT_EQ(parse("2+3*4").eval(0, 0, 0), 14.0);
    EXPECT_EQ(parse("(2+3)*4").eval(0, 0, 0), 20.0);
    EXPECT_EQ(parse("2^3^2").eval(0, 0, 0), 512.0);
    EXPECT_EQ(parse("-2^2").eval(0, 0, 0), -4.0);
    EXPECT_EQ(parse("2^-1").eval(0, 0, 0), 0.5);
    EXPECT_EQ(parse("8/4/2").eval(0, 0, 0), 1.0);
    EXPECT_EQ(parse("8-4-2").eval(0, 0, 0), 2.0);
    EXPECT_EQ(parse("--3").eval(0, 0, 0), 3.0);
}

TEST(Parse, SwirlFields) {
    EXPECT_DOUBLE_EQ(parse("-0.3*x + 1.5*sin(y)").eval(1, 0, 0), -0.3);
    EXPECT_DOUBLE_EQ(parse("0.3 + 0.2*abs(sin(x))").eval(0, 0, 0), 0.3);
    EXPECT_DOUBLE_EQ(parse("-0.3*y - 1.5*cos(x)").eval(0, 1, 0), -0.3 - 1.5);
    EXPECT_DOUBLE_EQ(parse("0.3 + 0.2*abs(cos(y))").eval(0, 0, 0), 0.5);
}

TEST(Parse, WhitespaceInsignificant) {
    EXPECT_EQ(parse("  x *\t2 + ( y )\n").eval(1.5, 2.0, 0), 5.0);
    EXPECT_TRUE(parse("x*2+(y)") == parse("  x *\t2 + ( y )\n"));
}

TEST(Parse, Variables) {
    EXPECT_EQ(parse("x").eval(1, 2, 3), 1.0);
    EXPECT_EQ(parse("y").eval(1, 2, 3), 2.0);
    EXPECT_EQ(parse("t").eval(1, 2, 3), 3.0);
    EXPECT_TRUE(parse("x*t").depends_on(Var::T));
    EXPECT_FALSE(parse("x*y").depends_on(Var::T));
}

TEST(Parse, Numbers) {
    EXPECT_EQ(parse("1e-3").eval(0, 0, 0), 1e-3);
    EXPECT_EQ(parse(".5").eval(0, 0, 0), 0.5);
    EXPECT_EQ(parse("2.5E+2").eval(0, 0, 0), 250.0);
}

namespace {

std::size_t error_position(const std::string& src) {
    try {
        parse(src);
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("position"), std::string::npos);
        return e.position();
    }
    ADD_FAILURE() << "no error for '" << src << "'";
    return 0;
}

}  // namespace

TEST(Parse, ErrorsCarryPositions) {
    EXPECT_EQ(error_position(""), 0u);
    EXPECT_EQ(error_position("x + z"), 4u);
    EXPECT_EQ(error_position("foo(x)"), 0u);
    EXPECT_EQ(error_position("(x + 1"), 6u);
    EXPECT_EQ(error_position("x + 1)"), 5u);
    EXPECT_EQ(error_position("x 2"), 2u);
    EXPECT_EQ(error_position("x +"), 3u);
    EXPECT_EQ(error_position("x * * 2"), 4u);
    EXPECT_EQ(error_position("sin x"), 4u);
    EXPECT_EQ(error_position("()"), 1u);
    EXPECT_EQ(error_position("1e999"), 0u);
}

TEST(Parse, ErrorMessages) {
    auto message = [](const std::string& src) {
        try {
            parse(src);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message("x + z").find("unknown identifier 'z'"), std::string::npos);
    EXPECT_NE(message("(x").find("unbalanced parentheses"), std::string::npos);
    EXPECT_NE(message("x)").find("unbalanced parentheses"), std::string::npos);
    EXPECT_NE(message("x y").find("trailing"), std::string::npos);
    EXPECT_NE(message("x+").find("empty operand"), std::string::npos);
    EXPECT_NE(message("").find("empty expression"), std::string::npos);
    EXPECT_NE(message("exp").find("requires parentheses"), std::string::npos);
}

TEST(Eval, Basics) {
    EXPECT_EQ(parse("7").eval(-3, 9, 100), 7.0);
    EXPECT_EQ(parse("x^2 + y^2").eval(3, 4, 0), 25.0);
    EXPECT_DOUBLE_EQ(parse("exp(log(x))").eval(2.5, 0, 0), 2.5);
    EXPECT_DOUBLE_EQ(parse("sqrt(x)").eval(16, 0, 0), 4.0);
    EXPECT_EQ(parse("abs(x)").eval(-2, 0, 0), 2.0);
}

TEST(Eval, DomainErrors) {
    EXPECT_THROW(parse("1/x").eval(0, 0, 0), EvalError);
    EXPECT_THROW(parse("log(x)").eval(0, 0, 0), EvalError);
    EXPECT_THROW(parse("log(x)").eval(-1, 0, 0), EvalError);
    EXPECT_THROW(parse("sqrt(x)").eval(-1, 0, 0), EvalError);
    EXPECT_THROW(parse("exp(x)").eval(1000, 0, 0), EvalError);
    EXPECT_NO_THROW(parse("sqrt(x)").eval(0, 0, 0));
}

TEST(Eval, DomainErrorNamesSubexpressionAndPoint) {
    try {
        parse("y + 1/(x - 2)").eval(2, 5, 0.5);
        FAIL();
    } catch (const EvalError& e) {
        EXPECT_EQ(e.subexpression(), "1/(x - 2)");
        const std::string what = e.what();
        EXPECT_NE(what.find("division by zero"), std::string::npos);
        EXPECT_NE(what.find("x=2"), std::string::npos);
        EXPECT_NE(what.find("y=5"), std::string::npos);
        EXPECT_NE(what.find("t=0.5"), std::string::npos);
    }
}

TEST(Eval, ConstantFolding) {
    EXPECT_TRUE(parse("2*3").is_constant());
    EXPECT_EQ(parse("2*3").constant_value(), 6.0);
    EXPECT_FALSE(parse("2*x").constant_value().has_value());
    EXPECT_EQ(FieldExpr::constant(4.5).eval(1, 1, 1), 4.5);
    EXPECT_EQ(FieldExpr().eval(1, 1, 1), 0.0);
}

TEST(Eval, DeepExpression) {
    std::string src = "x";
    for (int i = 0; i < 200; ++i) src = "(" + src + " + 1)";
    EXPECT_EQ(parse(src).eval(0.5, 0, 0), 200.5);
}

TEST(RoundTrip, Corpus) {
    const std::vector<std::string> corpus{
        "-0.3*x + 1.5*sin(y)",
        "-0.3*y - 1.5*cos(x)",
        "0.3 + 0.2*abs(sin(x))",
        "0.3 + 0.2*abs(cos(y))",
        "0.5*x",
        "0.2*x",
        "0.5*x^2",
        "exp(-x^2)",
        "-x",
        "1",
        "0",
        "x^2 + y^2",
        "2+3*4",
        "(2+3)*4",
        "2^3^2",
        "(2^3)^2",
        "-2^2",
        "(-2)^2",
        "2^-1",
        "2^(-x)",
        "x-(y-t)",
        "(x-y)-t",
        "x/(y/t)",
        "(x/y)/t",
        "x*(y*t)",
        "--x",
        "-(x+y)",
        "sqrt(abs(x*y)) + log(1 + t^2)",
        "exp(sin(x)*cos(y))/(1 + x^2)",
        "1e-12*x + 3.25e8",
        "0.1 + 0.2",
        "x^y^t",
        "-x^-y",
        "cos(t)*(x - 1)^3 - y/2",
        "(-1.5)*x",
        "x - -1",
    };
    for (const auto& src : corpus) {
        const FieldExpr e = parse(src);
        const std::string printed = e.to_string();
        const FieldExpr again = parse(printed);
        EXPECT_TRUE(again == e) << src << " -> " << printed;
        EXPECT_EQ(again.to_string(), printed);
        EXPECT_EQ(again.eval(0.7, 1.3, 0.4), e.eval(0.7, 1.3, 0.4)) << src;
    }
}

TEST(RoundTrip, StructuralInequality) {
    EXPECT_FALSE(parse("x+y") == parse("y+x"));
    EXPECT_FALSE(parse("(x+y)+t") == parse("x+(y+t)"));
}

TEST(FiniteDifference, LinearGradient) {
    const std::vector<double> p{3.7};
    const auto g = grad_fd(parse("x"), p, 0.0, 1e-5);
    EXPECT_NEAR(g[0], 1.0, 1e-10);
}

TEST(FiniteDifference, Quadratic2D) {
    const std::vector<double> p{1.0, 2.0};
    const auto e = parse("x^2+y^2");
    const auto g = grad_fd(e, p, 0.0, 1e-4);
    EXPECT_NEAR(g[0], 2.0, 1e-6);
    EXPECT_NEAR(g[1], 4.0, 1e-6);
    const auto h = hessian_fd(e, p, 0.0, 1e-4);
    EXPECT_NEAR(h[0], 2.0, 1e-3);
    EXPECT_NEAR(h[3], 2.0, 1e-3);
    EXPECT_NEAR(h[1], 0.0, 1e-3);
    EXPECT_EQ(h[1], h[2]);
}

TEST(FiniteDifference, SineDerivative) {
    const std::vector<double> p{0.5};
    EXPECT_NEAR(grad_fd(parse("sin(x)"), p)[0], 0.8775825618903728, 1e-8);
}

TEST(FiniteDifference, MixedPartialSymmetric) {
    const std::vector<double> p{0.3, -0.8};
    const auto h = hessian_fd(parse("sin(x*y) + x^3*y"), p);
    EXPECT_EQ(h[1], h[2]);
    // d2/dxdy = cos(xy) - xy sin(xy) + 3x^2
    const double xy = 0.3 * -0.8;
    EXPECT_NEAR(h[1], std::cos(xy) - xy * std::sin(xy) + 3 * 0.09, 1e-5);
}

TEST(FiniteDifference, SecondOrderConvergence) {
    struct Case {
        const char* src;
        double x;
        double y;
        double dx;  // exact d/dx
    };
    const std::vector<Case> battery{
        {"sin(x)", 0.5, 0.0, std::cos(0.5)},
        {"exp(x)", 0.2, 0.0, std::exp(0.2)},
        {"x^3 - 2*x", 1.1, 0.0, 3 * 1.21 - 2},
        {"log(1 + x^2)", 0.7, 0.0, 2 * 0.7 / 1.49},
        {"sin(x)*cos(y)", 0.4, 1.0, std::cos(0.4) * std::cos(1.0)},
    };
    for (const auto& c : battery) {
        const std::vector<double> p{c.x, c.y};
        const double e1 = std::fabs(grad_fd(parse(c.src), p, 0.0, 1e-2)[0] - c.dx);
        const double e2 = std::fabs(grad_fd(parse(c.src), p, 0.0, 5e-3)[0] - c.dx);
        const double ratio = e1 / e2;
        EXPECT_GT(ratio, 4.0 / 1.5) << c.src;
        EXPECT_LT(ratio, 4.0 * 1.5) << c.src;
    }
}

TEST(FiniteDifference, StencilErrorsPropagate) {
    const std::vector<double> p{0.0};
    EXPECT_THROW(grad_fd(parse("sqrt(x)"), p), EvalError);
    EXPECT_THROW(grad_fd(parse("x"), p, 0.0, -1.0), InvalidParameter);
}

TEST(CheckFiniteOnBox, DetectsPole) {
    const std::vector<double> lo{-1.0};
    const std::vector<double> hi{1.0};
    EXPECT_NO_THROW(check_finite_on_box(parse("exp(-x^2)"), lo, hi, 21));
    EXPECT_THROW(check_finite_on_box(parse("1/x"), lo, hi, 21), EvalError);
}
