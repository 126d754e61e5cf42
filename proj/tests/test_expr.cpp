#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gclass/expr.hpp"
#include "gclass/jet.hpp"

using namespace gclass;

TEST_CASE("parse and evaluate rational expressions") {
    ExprPtr e = parse_expr("x^2*z^3/6");
    CHECK(eval(e, Rational(2), Rational(3)) == Rational(18));
    CHECK(eval(e, Rational(0), Rational(5)) == Rational(0));

    ExprPtr p = parse_expr("x+z*x^2");
    CHECK(eval(p, Rational(1), Rational(2)) == Rational(3));
    CHECK(eval(p, Rational(1, 2), Rational(4)) == Rational(3, 2));
}

TEST_CASE("symbolic differentiation matches hand derivatives") {
    ExprPtr e = parse_expr("x^2*z^3/6");
    ExprPtr ex = diff(e, true);   // x z^3 / 3
    ExprPtr ez = diff(e, false);  // x^2 z^2 / 2
    CHECK(eval(ex, Rational(2), Rational(3)) == Rational(18));
    CHECK(eval(ez, Rational(2), Rational(3)) == Rational(18));

    // d/dx log(1 + x*z) = z/(1+xz)
    ExprPtr l = parse_expr("log(1+x*z)");
    ExprPtr lx = diff(l, true);
    CHECK(eval(lx, Rational(1, 3), Rational(2)) == Rational(2) / Rational(5, 3));
}

TEST_CASE("long double and jet evaluation agree with the symbolic derivative") {
    ExprPtr e = parse_expr("log(1-z^2*x)");
    long double v = eval(e, 0.1L, 0.5L);
    CHECK(v == doctest::Approx((double)logl(1.0L - 0.25L * 0.1L)).epsilon(1e-15));

    Jet xj = Jet::variable(2, 0.1L);
    Jet zj = Jet::constant(2, 0.5L);
    Jet j = eval(e, xj, zj);
    long double dx = eval(diff(e, true), 0.1L, 0.5L);
    CHECK((double)j.d(1) == doctest::Approx((double)dx).epsilon(1e-14));
}

TEST_CASE("jet second derivative of a cubic is exact") {
    ExprPtr e = parse_expr("x^3");
    Jet xj = Jet::variable(2, 2.0L);
    Jet zj = Jet::constant(2, 0.0L);
    Jet j = eval(e, xj, zj);
    CHECK((double)j.d(0) == doctest::Approx(8.0).epsilon(1e-16));
    CHECK((double)j.d(1) == doctest::Approx(12.0).epsilon(1e-16));
    CHECK((double)j.d(2) == doctest::Approx(12.0).epsilon(1e-16));
}

TEST_CASE("malformed input raises a parse error") {
    CHECK_THROWS_AS(parse_expr("x++"), ParseError);
    CHECK_THROWS_AS(parse_expr("log(x"), ParseError);
    CHECK_THROWS_AS(parse_expr(""), ParseError);
}
