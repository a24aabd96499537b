#include "gradform/expr.hpp"
#include "gradform/parser.hpp"
#include "gradform/printer.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gradform;

namespace {

struct ExprFixture {
    int phi, sigma, f, h0, h1, theta, a0, E, u, z;
    ExprFixture() {
        auto& tab = SymbolTable::instance();
        tab.reset();
        phi = tab.declare_field("phi", Reality::Real);
        sigma = tab.declare_field("sigma", Reality::Real);
        f = tab.declare_field("f", Reality::Real);
        h0 = tab.declare_field("h0", Reality::Real);
        h1 = tab.declare_field("h1", Reality::Real);
        theta = tab.declare_field("theta", Reality::Real);
        a0 = tab.declare_invertible("a");
        E = tab.declare_exp_unit("E", sigma, GaussRat::one());
        u = tab.declare_exp_unit("u", theta, GaussRat::imag_unit());
        z = tab.declare_field("z", Reality::Complex);
    }
    static ScalarExpr jet(int f, std::initializer_list<int> d) {
        return ScalarExpr::atom(f, DerivIndex(d));
    }
};

}  // namespace

TEST_CASE_METHOD(ExprFixture, "parser canonicalizes commutative products", "[expr]") {
    CHECK(to_string(parse_expr("x0*x1 + x1*x0")) == "2*x0*x1");
    CHECK(parse_expr("x0*x1 - x1*x0").is_zero());
    CHECK(to_string(parse_expr("d0(phi)")) == "d0(phi)");
    CHECK(to_string(parse_expr("i*i")) == "-1");
    CHECK(to_string(parse_expr("3/2 * phi^2")) == "3/2*phi^2");
    CHECK(to_string(parse_expr("(1+2*i)*phi")) == "(1+2*i)*phi");
    CHECK(to_string(parse_expr("-i*phi")) == "-i*phi");
}

TEST_CASE_METHOD(ExprFixture, "parser reports positions and unknown names", "[expr]") {
    CHECK_THROWS_AS(parse_expr("x0 + "), ParseError);
    CHECK_THROWS_AS(parse_expr("nosuchfield"), ParseError);
    CHECK_THROWS_AS(parse_expr("x0 ++ x1"), ParseError);
    CHECK_THROWS_AS(parse_expr("d7(phi)"), ParseError);
    try {
        parse_expr("x0 * (x1 + )");
    } catch (const ParseError& err) {
        CHECK(err.pos == 11);
    }
}

TEST_CASE_METHOD(ExprFixture, "print-parse round trip is the identity", "[expr]") {
    testing::ExprGen gen(20260810, {phi, sigma, z});
    for (int n = 0; n < 200; ++n) {
        ScalarExpr e = gen.expr();
        CHECK(parse_expr(to_string(e)) == e);
    }
}

TEST_CASE_METHOD(ExprFixture, "partial derivative basics", "[expr]") {
    ScalarExpr x0 = parse_expr("x0"), x1 = parse_expr("x1");
    CHECK(partial(x0 * x1, 0) == x1);
    CHECK(partial(ScalarExpr::atom(phi), 2) == jet(phi, {2}));
    // Leibniz on d1(sigma)*d1(sigma)
    ScalarExpr s1 = jet(sigma, {1});
    CHECK(partial(s1 * s1, 1) == 2 * (jet(sigma, {1, 1}) * s1));
    // mixed partials commute
    testing::ExprGen gen(7, {phi, sigma, z});
    for (int n = 0; n < 100; ++n) {
        ScalarExpr e = gen.expr();
        int mu = gen.uniform(0, 3), nu = gen.uniform(0, 3);
        CHECK(partial(partial(e, mu), nu) == partial(partial(e, nu), mu));
    }
    // a field that does not depend on a coordinate has zero derivative
    auto& tab = SymbolTable::instance();
    int w = tab.declare_field("w_only01", Reality::Real, {0, 1});
    CHECK(partial(ScalarExpr::atom(w), 2).is_zero());
}

TEST_CASE_METHOD(ExprFixture, "jet order is capped", "[expr]") {
    ScalarExpr e = ScalarExpr::atom(phi);
    for (int n = 0; n < kMaxJetOrder; ++n) e = partial(e, 0);
    CHECK_THROWS_AS(partial(e, 0), Error);
}

TEST_CASE_METHOD(ExprFixture, "conjugation is an involutive ring map", "[expr]") {
    testing::ExprGen gen(99, {phi, z});
    for (int n = 0; n < 100; ++n) {
        ScalarExpr a = gen.expr(), b = gen.expr();
        CHECK(conj(conj(a)) == a);
        CHECK(conj(a * b) == conj(a) * conj(b));
        CHECK(conj(a + b) == conj(a) + conj(b));
    }
    CHECK(conj(ScalarExpr::imag_unit()) == -ScalarExpr::imag_unit());
    CHECK(conj(ScalarExpr::atom(phi)) == ScalarExpr::atom(phi));
}

TEST_CASE_METHOD(ExprFixture, "unit symbols", "[expr]") {
    ScalarExpr Ee = ScalarExpr::atom(E);
    ScalarExpr a = ScalarExpr::atom(a0);

    SECTION("exp unit derivative rewrites to base jets") {
        CHECK(partial(Ee, 0) == jet(sigma, {0}) * Ee);
        ScalarExpr E2 = Ee.pow(2);
        CHECK(partial(E2, 1) == 2 * (jet(sigma, {1}) * E2));
    }
    SECTION("inverses cancel exactly") {
        CHECK(Ee * Ee.inverse() == ScalarExpr::one());
        CHECK(a.pow(2) * a.pow(-2) == ScalarExpr::one());
        CHECK(partial(a.inverse(), 0) == -(a.pow(-2) * jet(a0, {0})));
    }
    SECTION("unit modulus conj is the inverse") {
        ScalarExpr uu = ScalarExpr::atom(u);
        CHECK(conj(uu) == uu.inverse());
        CHECK(uu * conj(uu) == ScalarExpr::one());
        CHECK(partial(uu, 0) == ScalarExpr::imag_unit() * jet(theta, {0}) * uu);
    }
    SECTION("non-invertible sums have no inverse") {
        CHECK_THROWS_AS((Ee + ScalarExpr::one()).inverse(), Error);
        CHECK_THROWS_AS(ScalarExpr::atom(phi).inverse(), Error);
    }
}

TEST_CASE_METHOD(ExprFixture, "euler derivative annihilates total divergences", "[expr]") {
    // hand-built divergence: d0(phi*d1(phi)) + d1(phi^2)
    ScalarExpr L = partial(ScalarExpr::atom(phi) * jet(phi, {1}), 0) +
                   partial(ScalarExpr::atom(phi).pow(2), 1);
    CHECK(euler_derivative(L, phi).is_zero());

    // randomized: euler(e + d_mu h^mu, f) == euler(e, f)
    testing::ExprGen gen(4242, {phi, sigma, h0, h1});
    for (int n = 0; n < 100; ++n) {
        ScalarExpr e = gen.expr();
        ScalarExpr div = partial(gen.expr(), gen.uniform(0, 3));
        CHECK(euler_derivative(e + div, phi) == euler_derivative(e, phi));
    }
}

TEST_CASE_METHOD(ExprFixture, "euler derivative of quadratic kinetic term", "[expr]") {
    // L = 1/2 sum_mu eta^{mumu} (d_mu f)^2, eta = (-1,+1,+1,+1)
    GaussRat half{Rational(1, 2)};
    ScalarExpr L;
    const int eta[4] = {-1, 1, 1, 1};
    for (int mu = 0; mu < 4; ++mu)
        L += GaussRat{Rational(eta[mu], 2)} * (jet(f, {mu}) * jet(f, {mu}));
    ScalarExpr expected;
    for (int mu = 0; mu < 4; ++mu)
        expected += GaussRat{Rational(-eta[mu])} * jet(f, {mu, mu});
    CHECK(euler_derivative(L, f) == expected);
    (void)half;
}

TEST_CASE_METHOD(ExprFixture, "euler derivative linear in the undifferentiated field", "[expr]") {
    // L = phi * X with X free of phi -> euler = X
    ScalarExpr X = jet(h0, {0}) * jet(h1, {1}) + ScalarExpr::atom(h0).pow(2);
    CHECK(euler_derivative(ScalarExpr::atom(phi) * X, phi) == X);
    CHECK_THROWS_AS(euler_derivative(X, E), Error);  // not a field
}

TEST_CASE_METHOD(ExprFixture, "euler derivative chains through exp units", "[expr]") {
    ScalarExpr Ee = ScalarExpr::atom(E);
    CHECK(euler_derivative(Ee, sigma) == Ee);
    // L = E*(d0 sigma)^2 -> -E*(d0 sigma)^2 - 2*E*d0d0(sigma)
    ScalarExpr L = Ee * jet(sigma, {0}) * jet(sigma, {0});
    ScalarExpr expected =
        -(Ee * jet(sigma, {0}) * jet(sigma, {0})) - 2 * (Ee * jet(sigma, {0, 0}));
    CHECK(euler_derivative(L, sigma) == expected);
}

TEST_CASE_METHOD(ExprFixture, "field substitution", "[expr]") {
    // substitute f -> phi^2 inside d0(f)*f
    ScalarExpr e = jet(f, {0}) * ScalarExpr::atom(f);
    ScalarExpr expect =
        partial(ScalarExpr::atom(phi).pow(2), 0) * ScalarExpr::atom(phi).pow(2);
    CHECK(substitute_field(e, f, ScalarExpr::atom(phi).pow(2)) == expect);
    // sigma -> 0 collapses exp units
    ScalarExpr withE = ScalarExpr::atom(E).pow(3) * ScalarExpr::atom(phi);
    CHECK(substitute_field(withE, sigma, ScalarExpr::zero()) == ScalarExpr::atom(phi));
    CHECK_THROWS_AS(substitute_field(withE, sigma, ScalarExpr::one()), Error);
}
