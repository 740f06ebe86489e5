#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "walker/expr.hpp"

using namespace walker;

static Expr X(int i) { return Expr::coordinate_x(i); }

TEST_CASE("arithmetic is canonical") {
    Expr a = (X(1) + X(2)) * (X(1) - X(2));
    Expr b = X(1) * X(1) - X(2) * X(2);
    CHECK(a == b);
    CHECK((a - b).is_zero());
    CHECK((Expr(2) * X(1) - X(1) - X(1)).is_zero());
    CHECK(X(1) * X(2) == X(2) * X(1));
    CHECK((X(1) + X(2)).pow(2) == X(1).pow(2) + Expr(2) * X(1) * X(2) + X(2).pow(2));
}

TEST_CASE("rational coefficients stay exact") {
    Expr e = Expr(Rational(1, 3)) * X(1) + Expr(Rational(1, 6)) * X(1);
    CHECK(e == Expr(Rational(1, 2)) * X(1));
    // 1/3 is not representable in floating point; (3 * 1/3 - 1) must be 0.
    CHECK((Expr(3) * Expr(Rational(1, 3)) - Expr(1)).is_zero());
}

TEST_CASE("diff in coordinates") {
    Expr e = X(1).pow(3) * Expr::coordinate_u() + Expr::coordinate_v() * X(2);
    CHECK(e.diff(var::x(1)) == Expr(3) * X(1).pow(2) * Expr::coordinate_u());
    CHECK(e.diff(var::v) == X(2));
    CHECK(e.diff(var::x(3)).is_zero());
    // d/du d/dx1 == d/dx1 d/du
    CHECK(e.diff(var::u).diff(var::x(1)) == e.diff(var::x(1)).diff(var::u));
}

TEST_CASE("diff promotes formal derivatives by the chain rule") {
    Expr F = Expr::formal(0);
    Expr e = F * X(1).pow(2);
    CHECK(e.diff(var::u) == Expr::formal(0, 1) * X(1).pow(2));
    CHECK(e.diff(var::x(1)) == Expr(2) * F * X(1));
    // product rule with two formal symbols
    Expr G = Expr::formal(1);
    Expr p = F * G;
    CHECK(p.diff(var::u) == Expr::formal(0, 1) * G + F * Expr::formal(1, 1));
    // second derivative
    CHECK((F * F).diff(var::u).diff(var::u) ==
          Expr(2) * Expr::formal(0, 1).pow(2) + Expr(2) * F * Expr::formal(0, 2));
}

TEST_CASE("divide_exact") {
    Expr a = (X(1) + X(2)).pow(3) * (X(1) - Expr(2));
    auto q = Expr::divide_exact(a, (X(1) + X(2)).pow(2));
    REQUIRE(q.has_value());
    CHECK(*q == (X(1) + X(2)) * (X(1) - Expr(2)));
    CHECK(!Expr::divide_exact(X(1).pow(2) + Expr(1), X(1)).has_value());
    CHECK_THROWS_AS((void)Expr::divide_exact(X(1), Expr()), DivisionByZeroExpr);
    // zero divided by anything nonzero is zero
    auto z = Expr::divide_exact(Expr(), X(1));
    REQUIRE(z.has_value());
    CHECK(z->is_zero());
}

TEST_CASE("divide_exact round-trip property over a small grid") {
    std::vector<Expr> pool = {X(1) + Expr(1), X(2).pow(2) - X(1),
                              Expr::coordinate_u() * X(1) + Expr(Rational(3, 2)),
                              Expr::formal(0) * X(2) - Expr(5)};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            auto q = Expr::divide_exact(a * b, b);
            REQUIRE(q.has_value());
            CHECK(*q == a);
        }
}

TEST_CASE("eval with jets") {
    JetPoint pt;
    pt.coords[var::x(1)] = Rational(2);
    pt.coords[var::u] = Rational(1, 2);
    pt.jets[0] = {Rational(3), Rational(-1)};
    Expr e = Expr::formal(0) * X(1).pow(2) + Expr::formal(0, 1) * Expr::coordinate_u();
    CHECK(e.eval(pt) == Rational(3) * 4 - Rational(1, 2));
    // v defaults to 0
    CHECK((Expr::coordinate_v() + Expr(7)).eval(pt) == 7);
    // missing jet order
    Expr deep = Expr::formal(0, 2);
    CHECK_THROWS_AS((void)deep.eval(pt), InsufficientJet);
    Expr other = Expr::formal(5);
    CHECK_THROWS_AS((void)other.eval(pt), InsufficientJet);
}

TEST_CASE("parser round-trips str()") {
    std::vector<std::string> inputs = {
        "x1^2 + 2*x2^2", "3/2*v - u^3", "F0(u)*x1 - F1^(2)(u)",
        "(x1 + x2)*(x1 - x2) + 1/7", "2*u*x1*F0^(1)(u)"};
    for (const auto& s : inputs) {
        Expr e = parse_expr(s);
        CHECK(parse_expr(e.str()) == e);
    }
    CHECK(parse_expr("x1^2 - x1^2").is_zero());
    CHECK(parse_expr("6/4") == Expr(Rational(3, 2)));
    CHECK(parse_expr("x1/2") == Expr(Rational(1, 2)) * X(1));
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS((void)parse_expr("x1 +"), ParseError);
    CHECK_THROWS_AS((void)parse_expr("x1 / x2"), ParseError); // non-constant divisor
    CHECK_THROWS_AS((void)parse_expr("x1^(-2)"), ParseError);
    CHECK_THROWS_AS((void)parse_expr("y1"), ParseError);
    CHECK_THROWS_AS((void)parse_expr("1/0"), ParseError);
    CHECK_THROWS_AS((void)parse_expr(""), ParseError);
}

TEST_CASE("substitute") {
    Expr e = X(1).pow(2) + Expr::formal(0) * X(2);
    std::map<int32_t, Expr> im;
    im[var::x(1)] = X(1) + Expr::coordinate_u();
    Expr s = e.substitute(im);
    CHECK(s == (X(1) + Expr::coordinate_u()).pow(2) + Expr::formal(0) * X(2));
    // substitution commutes with x-differentiation for x-only images
    im.clear();
    im[var::x(2)] = X(2).pow(2);
    CHECK(e.substitute(im).diff(var::x(1)) == e.diff(var::x(1)).substitute(im));
}

TEST_CASE("kill_formal_derivatives and rename_formal") {
    Expr e = Expr::formal(0) + Expr::formal(0, 1) * X(1) + Expr::formal(0, 2);
    CHECK(e.kill_formal_derivatives(0, 1) == Expr::formal(0));
    CHECK(e.kill_formal_derivatives(0, 3) == e);
    Expr f = Expr::formal(0) * Expr::formal(1, 1);
    CHECK(f.rename_formal(1, 0) == Expr::formal(0) * Expr::formal(0, 1));
}

TEST_CASE("metadata queries") {
    Expr e = Expr::formal(0, 2) * X(1).pow(3) + Expr::formal(2) * Expr::coordinate_u();
    CHECK(e.depends_on(var::x(1)));
    CHECK(!e.depends_on(var::v));
    CHECK(e.degree(var::x(1)) == 3);
    auto fo = e.formal_orders();
    CHECK(fo.at(0) == 2);
    CHECK(fo.at(2) == 0);
    CHECK(fo.size() == 2);
}

TEST_CASE("jet point parsing") {
    JetPoint p = parse_jet_point(R"({"v":"1/2","x1":2,"u":0,"F0":[1,"3/2",0]})", 2);
    CHECK(p.coords[var::v] == Rational(1, 2));
    CHECK(p.coords[var::x(1)] == 2);
    CHECK(p.jets[0].size() == 3);
    CHECK(p.jets[0][1] == Rational(3, 2));
    CHECK_THROWS_AS((void)parse_jet_point(R"({"x5":1})", 2), ParseError);
    CHECK_THROWS_AS((void)parse_jet_point("not json", 2), ParseError);
}
