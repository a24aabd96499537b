#include "gradform/gform.hpp"
#include "gradform/parser.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace gradform;

namespace {

struct GformFixture {
    int phi, h, theta, Asym, Hsym, Wsym;
    GformFixture() {
        auto& tab = SymbolTable::instance();
        tab.reset();
        phi = tab.declare_field("phi", Reality::Real);
        h = tab.declare_field("h", Reality::Complex);
        theta = tab.declare_field("theta", Reality::Real);
        Asym = tab.declare_matrix_symbol("A", MatrixKind::Unitary);
        Hsym = tab.declare_matrix_symbol("H", MatrixKind::Generic);
        Wsym = tab.declare_matrix_symbol("W", MatrixKind::SkewHermitian);
    }
};

CoeffMatrix mat2(std::initializer_list<long> v) {
    CoeffMatrix m(2);
    auto it = v.begin();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = NcPoly(ScalarExpr(*it++));
    return m;
}

/// Independent sign oracle: parity of the bubble sort of the concatenation,
/// zero for repeated entries.
int brute_sign(GenMono v) {
    int sign = 1;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j + 1 < v.size() - i; ++j) {
            if (v[j] == v[j + 1]) return 0;
            if (v[j] > v[j + 1]) {
                std::swap(v[j], v[j + 1]);
                sign = -sign;
            }
        }
    return sign;
}

GradedForm random_form(testing::ExprGen& gen, AlgebraSpec alg, int max_terms = 3,
                       std::optional<int> degree = std::nullopt) {
    GradedForm f(alg);
    int nt = gen.uniform(1, max_terms);
    for (int t = 0; t < nt; ++t) {
        int deg = degree ? *degree : gen.uniform(0, alg.gens());
        GenMono mono;
        for (int g = 0; g < alg.gens() && static_cast<int>(mono.size()) < deg; ++g)
            if (gen.uniform(0, 1) || alg.gens() - g == deg - static_cast<int>(mono.size()))
                mono.push_back(static_cast<uint8_t>(g));
        CoeffMatrix c(alg.n);
        for (int i = 0; i < alg.n; ++i)
            for (int j = 0; j < alg.n; ++j) c.at(i, j) = NcPoly(ScalarExpr(gen.coeff()));
        f += GradedForm::term(alg, mono, c);
    }
    return f;
}

}  // namespace

TEST_CASE_METHOD(GformFixture, "wedge on generators and matrices", "[gform]") {
    AlgebraSpec alg{1, 1, 1};  // dx0 and xi1
    GradedForm xi = GradedForm::generator(alg, 1);
    GradedForm dx0 = GradedForm::generator(alg, 0);
    CHECK(wedge(xi, dx0) == -GradedForm::term(alg, {0, 1}, CoeffMatrix::identity(1)));
    CHECK(wedge(xi, xi).is_zero());
    CHECK(wedge(dx0, xi) == GradedForm::term(alg, {0, 1}, CoeffMatrix::identity(1)));

    AlgebraSpec m2{2, 0, 2};
    GradedForm a = GradedForm::term(m2, {0}, mat2({0, 1, 0, 0}));
    GradedForm b = GradedForm::term(m2, {1}, mat2({0, 0, 1, 0}));
    // direct matrix-product oracle: A*B with explicit loops
    CoeffMatrix ab(2);
    CoeffMatrix A = mat2({0, 1, 0, 0}), B = mat2({0, 0, 1, 0});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            NcPoly acc;
            for (int l = 0; l < 2; ++l) acc += A.at(i, l) * B.at(l, j);
            ab.at(i, j) = acc;
        }
    CHECK(ab == mat2({1, 0, 0, 0}));
    CHECK(wedge(a, b) == GradedForm::term(m2, {0, 1}, ab));
    CHECK_THROWS_AS(wedge(a, GradedForm::unit(alg)), Error);
}

TEST_CASE_METHOD(GformFixture, "koszul sign equals the permutation-parity oracle", "[gform]") {
    AlgebraSpec alg{4, 3, 1};
    std::mt19937 rng(11);
    int checked = 0;
    for (int n = 0; n < 400; ++n) {
        GenMono ma, mb;
        for (int g = 0; g < alg.gens(); ++g) {
            if (rng() % 3 == 0) ma.push_back(static_cast<uint8_t>(g));
            if (rng() % 3 == 0) mb.push_back(static_cast<uint8_t>(g));
        }
        GenMono concat = ma;
        concat.insert(concat.end(), mb.begin(), mb.end());
        int oracle = brute_sign(concat);
        GradedForm w = wedge(GradedForm::term(alg, ma, CoeffMatrix::identity(1)),
                             GradedForm::term(alg, mb, CoeffMatrix::identity(1)));
        if (oracle == 0) {
            CHECK(w.is_zero());
        } else {
            GenMono sorted = concat;
            std::sort(sorted.begin(), sorted.end());
            auto c = w.coeff(sorted);
            REQUIRE(c != nullptr);
            CHECK(c->at(0, 0).scalar() == ScalarExpr(oracle));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE_METHOD(GformFixture, "wedge associativity", "[gform]") {
    for (int n : {1, 2}) {
        AlgebraSpec alg{3, 2, n};
        testing::ExprGen gen(31 + n, {phi, h});
        for (int rep = 0; rep < 100; ++rep) {
            GradedForm a = random_form(gen, alg), b = random_form(gen, alg),
                       c = random_form(gen, alg);
            CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        }
    }
}

TEST_CASE_METHOD(GformFixture, "involution", "[gform]") {
    AlgebraSpec alg{4, 1, 1};
    GradedForm dx0 = GradedForm::generator(alg, 0);
    CHECK(involution(dx0) == -dx0);
    CHECK(involution(GradedForm::unit(alg)) == GradedForm::unit(alg));
    GradedForm mixed = GradedForm::term(alg, {0, 4}, CoeffMatrix::identity(1));
    CHECK(involution(mixed) == mixed);

    testing::ExprGen gen(77, {phi, h});
    for (int rep = 0; rep < 100; ++rep) {
        GradedForm a = random_form(gen, alg), b = random_form(gen, alg);
        CHECK(involution(wedge(a, b)) == wedge(involution(a), involution(b)));
    }
}

TEST_CASE_METHOD(GformFixture, "dagger", "[gform]") {
    AlgebraSpec alg{4, 1, 1};
    GradedForm iw = GradedForm::scalar(alg, ScalarExpr::imag_unit());
    CHECK(dagger(iw) == -iw);

    AlgebraSpec m2{4, 1, 2};
    CoeffMatrix c(2);
    c.at(0, 1) = NcPoly(ScalarExpr::symbol("h"));
    c.at(1, 0) = NcPoly(-conj(ScalarExpr::symbol("h")));
    CoeffMatrix expect(2);
    expect.at(0, 1) = NcPoly(-ScalarExpr::symbol("h"));
    expect.at(1, 0) = NcPoly(conj(ScalarExpr::symbol("h")));
    CHECK(GradedForm::term(m2, {2}, c.dagger()) == GradedForm::term(m2, {2}, expect));

    testing::ExprGen gen(5, {phi, h});
    for (int rep = 0; rep < 100; ++rep) {
        GradedForm a = random_form(gen, m2);
        CHECK(dagger(dagger(a)) == a);
    }
}

TEST_CASE_METHOD(GformFixture, "dagger of a product carries the koszul swap sign", "[gform]") {
    AlgebraSpec alg{3, 2, 1};
    testing::ExprGen gen(13, {phi, h});
    for (int rep = 0; rep < 200; ++rep) {
        int p = gen.uniform(0, 3), q = gen.uniform(0, 3);
        GradedForm a = random_form(gen, alg, 2, p), b = random_form(gen, alg, 2, q);
        GradedForm lhs = dagger(wedge(a, b));
        GradedForm rhs = wedge(dagger(b), dagger(a));
        if ((p * q) % 2 == 1) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE_METHOD(GformFixture, "scalar homogeneous forms supercommute", "[gform]") {
    AlgebraSpec alg{3, 2, 1};
    testing::ExprGen gen(17, {phi});
    for (int rep = 0; rep < 200; ++rep) {
        int p = gen.uniform(0, 3), q = gen.uniform(0, 3);
        GradedForm a = random_form(gen, alg, 2, p), b = random_form(gen, alg, 2, q);
        GradedForm rhs = wedge(b, a);
        if ((p * q) % 2 == 1) rhs = -rhs;
        CHECK(wedge(a, b) == rhs);
    }
}

TEST_CASE_METHOD(GformFixture, "grade projection", "[gform]") {
    AlgebraSpec alg{4, 1, 1};
    GradedForm one = GradedForm::unit(alg);
    GradedForm dx0 = GradedForm::generator(alg, 0);
    CHECK(grade_project(one + dx0, 0) == one);
    CHECK(grade_project(one + dx0, 1) == dx0);
    CHECK(grade_project(one + dx0, 2).is_zero());
    CHECK(!(one + dx0).homogeneous_degree().has_value());
    CHECK((dx0).homogeneous_degree() == 1);
}

TEST_CASE_METHOD(GformFixture, "exterior derivative", "[gform]") {
    AlgebraSpec alg{4, 1, 1};
    ScalarExpr x0 = parse_expr("x0"), x1 = parse_expr("x1");
    GradedForm f = GradedForm::scalar(alg, x0 * x1);
    GradedForm expect = wedge(GradedForm::scalar(alg, x1), GradedForm::generator(alg, 0)) +
                        wedge(GradedForm::scalar(alg, x0), GradedForm::generator(alg, 1));
    CHECK(exterior_d(f) == expect);

    // d(phi xi1) = sum_mu d_mu(phi) dx^mu ^ xi1
    GradedForm pxi = wedge(GradedForm::scalar(alg, ScalarExpr::atom(phi)),
                           GradedForm::generator(alg, 4));
    GradedForm dpxi(alg);
    for (int mu = 0; mu < 4; ++mu)
        dpxi += wedge(wedge(GradedForm::scalar(alg, partial(ScalarExpr::atom(phi), mu)),
                            GradedForm::generator(alg, mu)),
                      GradedForm::generator(alg, 4));
    CHECK(exterior_d(pxi) == dpxi);

    testing::ExprGen gen(23, {phi, h});
    for (int rep = 0; rep < 100; ++rep) {
        GradedForm a = random_form(gen, alg);
        // make coefficients coordinate dependent so d is nontrivial
        GradedForm ax = ScalarExpr::atom(phi) * a;
        CHECK(exterior_d(exterior_d(ax)).is_zero());
    }
}

TEST_CASE_METHOD(GformFixture, "noncommutative words rewrite to fixpoint", "[gform][ncpoly]") {
    NcPoly A = NcPoly::symbol(Asym);
    NcPoly Ad = NcPoly::symbol(Asym, {}, true);
    NcPoly H = NcPoly::symbol(Hsym);

    CHECK(A * Ad == NcPoly::one());
    CHECK(Ad * A == NcPoly::one());
    CHECK((A * H * Ad) * (A * H.dagger() * Ad) == A * H * H.dagger() * Ad);

    // dagger of a derivative of a unitary expands to -Ad dA Ad
    NcPoly dA = A.partial(0);
    CHECK(dA.dagger() == -(Ad * dA * Ad));
    // and that expansion is coherent with d(Ad)
    CHECK(Ad.partial(0) == -(Ad * dA * Ad));
    // second derivatives stay coherent: d0 d1 (Ad) == d1 d0 (Ad)
    CHECK(Ad.partial(0).partial(1) == Ad.partial(1).partial(0));

    // skew-hermitian: W+ = -W, also under derivatives
    NcPoly W = NcPoly::symbol(Wsym);
    CHECK(W.dagger() == -W);
    CHECK(W.partial(2).dagger() == -W.partial(2));

    // dagger is an involutive antihomomorphism
    NcPoly w1 = A * H + ScalarExpr::imag_unit() * H * H;
    NcPoly w2 = H.dagger() * Ad - NcPoly(ScalarExpr::symbol("h"));
    CHECK((w1 * w2).dagger() == w2.dagger() * w1.dagger());
    CHECK(w1.dagger().dagger() == w1);
}
