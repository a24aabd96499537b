#include "gradform/clifford.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gradform;

namespace {

struct CliffordFixture {
    GammaRep rep = GammaRep::dirac();
    int phi, theta, h1, h2, t0, t1, t2, t3, u, ascale;
    AlgebraSpec ext{4, 1, 1};
    CliffordFixture() {
        auto& tab = SymbolTable::instance();
        tab.reset();
        phi = tab.declare_field("phi", Reality::Real);
        theta = tab.declare_field("theta", Reality::Real);
        h1 = tab.declare_field("H1", Reality::Complex);
        h2 = tab.declare_field("H2", Reality::Complex);
        t0 = tab.declare_field("t_0", Reality::Real);
        t1 = tab.declare_field("t_1", Reality::Real);
        t2 = tab.declare_field("t_2", Reality::Real);
        t3 = tab.declare_field("t_3", Reality::Real);
        u = tab.declare_exp_unit("u", theta, GaussRat::imag_unit());
        ascale = tab.declare_invertible("a", {0});
    }

    GradedForm gen(int g) const { return GradedForm::generator(ext, g); }
    GradedForm scalar(const ScalarExpr& s) const { return GradedForm::scalar(ext, s); }

    GradedForm alpha_one_form() const {
        GradedForm out(ext);
        int ts[4] = {t0, t1, t2, t3};
        for (int mu = 0; mu < 4; ++mu)
            out += wedge(scalar(ScalarExpr::imag_unit() * ScalarExpr::atom(ts[mu])), gen(mu));
        return out;
    }
};

}  // namespace

TEST_CASE_METHOD(CliffordFixture, "clifford invariants of the shipped representation",
                 "[clifford]") {
    CliffordCheck check = verify_clifford(rep);
    INFO(check.detail);
    CHECK(check.ok);

    // spot checks straight from the defining relations
    CMat anti00 = rep.gamma[0] * rep.gamma[0] + rep.gamma[0] * rep.gamma[0];
    CHECK(anti00 == GaussRat{2} * CMat::identity(4));
    CMat anti01 = rep.gamma[0] * rep.gamma[1] + rep.gamma[1] * rep.gamma[0];
    CHECK(anti01.is_zero());
    CHECK(rep.gamma5 * rep.gamma5 == CMat::identity(4));
    CHECK(dagger(rep.gamma5) == rep.gamma5);

    // a broken representation is reported with a witness
    GammaRep bad = rep;
    bad.gamma[1] = rep.gamma[2];
    CHECK_FALSE(verify_clifford(bad).ok);
}

TEST_CASE_METHOD(CliffordFixture, "clifford action on one-forms", "[clifford]") {
    XMat c0 = clifford_action(gen(0), rep);
    CHECK(c0 == ScalarExpr::imag_unit() * to_expr(rep.gamma[0]));
    XMat cxi = clifford_action(gen(4), rep);
    CHECK(cxi == to_expr(rep.gamma5));
    XMat lin = clifford_action(gen(0) + GaussRat{2} * gen(4), rep);
    CHECK(lin == ScalarExpr::imag_unit() * to_expr(rep.gamma[0]) +
                     ScalarExpr(2) * to_expr(rep.gamma5));
    CHECK_THROWS_AS(clifford_action(GradedForm::unit(ext), rep), Error);
    CHECK_THROWS_AS(clifford_action(gen(0) + GradedForm::unit(ext), rep), Error);

    // curved frame conversion gamma~^mu = e^mu_a gamma^a
    MetricSpec gm;
    gm.a = {ScalarExpr::one(), ScalarExpr::atom(ascale), ScalarExpr::atom(ascale),
            ScalarExpr::atom(ascale)};
    gm.sigma = phi;  // unused here
    gm.exp_half_sigma = ScalarExpr::one();
    XMat c1 = clifford_action(gen(1), rep, gm);
    CHECK(c1 == ScalarExpr::imag_unit() * (ScalarExpr::atom(ascale).inverse() *
                                           to_expr(rep.gamma[1])));
}

TEST_CASE_METHOD(CliffordFixture, "chiral spinors and the gamma5 elimination sign",
                 "[clifford]") {
    Spinor l = make_chiral_spinor("psiL", Chirality::Left, rep);
    Spinor r = make_chiral_spinor("psiR", Chirality::Right, rep);
    CHECK(chirality_holds(l, Chirality::Left, rep));
    CHECK(chirality_holds(r, Chirality::Right, rep));
    CHECK_FALSE(chirality_holds(l, Chirality::Right, rep));

    XMat g5 = to_expr(rep.gamma5);
    XMat id = to_expr(CMat::identity(4));
    // psibar_L gamma5 psi_R = -psibar_L psi_R, psibar_R gamma5 psi_L = +psibar_R psi_L
    CHECK(spinor_bilinear(l, g5, r, rep) == -spinor_bilinear(l, id, r, rep));
    CHECK(spinor_bilinear(r, g5, l, rep) == spinor_bilinear(r, id, l, rep));
    // like-chirality scalar bilinears vanish
    CHECK(spinor_bilinear(l, id, l, rep).is_zero());
    CHECK(spinor_bilinear(r, id, r, rep).is_zero());
}

TEST_CASE_METHOD(CliffordFixture, "yukawa expansion matches the canonical form",
                 "[clifford]") {
    std::vector<Spinor> psi = {make_chiral_spinor("psi1", Chirality::Left, rep),
                               make_chiral_spinor("psi2", Chirality::Left, rep),
                               make_chiral_spinor("psi3", Chirality::Right, rep)};
    ScalarExpr H1 = ScalarExpr::atom(h1), H2 = ScalarExpr::atom(h2);
    ScalarExpr ph = ScalarExpr::atom(phi);
    XMat id = to_expr(CMat::identity(4));
    XMat g5 = to_expr(rep.gamma5);

    auto expected = [&](const ScalarExpr& x1, const ScalarExpr& x2, const ScalarExpr& p) {
        ScalarExpr out = -(x1 * spinor_bilinear(psi[0], id, psi[2], rep) +
                           x2 * spinor_bilinear(psi[1], id, psi[2], rep) +
                           conj(x1) * spinor_bilinear(psi[2], id, psi[0], rep) +
                           conj(x2) * spinor_bilinear(psi[2], id, psi[1], rep));
        for (int i = 0; i < 3; ++i)
            out += ScalarExpr::imag_unit() * p *
                   spinor_bilinear(psi[static_cast<size_t>(i)], g5,
                                   psi[static_cast<size_t>(i)], rep);
        return out;
    };

    CHECK(yukawa_expand(H1, H2, ph, psi, rep) == expected(H1, H2, ph));
    CHECK(yukawa_expand(H1, ScalarExpr::zero(), ScalarExpr::zero(), psi, rep) ==
          expected(H1, ScalarExpr::zero(), ScalarExpr::zero()));
    CHECK(yukawa_expand(ScalarExpr::zero(), ScalarExpr::zero(), ph, psi, rep) ==
          expected(ScalarExpr::zero(), ScalarExpr::zero(), ph));
}

TEST_CASE_METHOD(CliffordFixture, "yukawa pairing is gauge invariant", "[clifford]") {
    std::vector<Spinor> psi = {make_chiral_spinor("psi1", Chirality::Left, rep),
                               make_chiral_spinor("psi2", Chirality::Left, rep),
                               make_chiral_spinor("psi3", Chirality::Right, rep)};
    ScalarExpr H1 = ScalarExpr::atom(h1), H2 = ScalarExpr::atom(h2);
    ScalarExpr ph = ScalarExpr::atom(phi);
    ScalarExpr uu = ScalarExpr::atom(u), ubar = conj(ScalarExpr::atom(u));
    GaussRat c{Rational(3, 5)}, s{Rational(4, 5)};

    // H -> A H e^{-i theta}, Psi -> diag(A, e^{i theta}) Psi with the exact
    // rotation A = [[3/5, -4/5], [4/5, 3/5]]
    ScalarExpr H1p = (c * H1 - s * H2) * ubar;
    ScalarExpr H2p = (s * H1 + c * H2) * ubar;
    std::vector<Spinor> psip = {ScalarExpr(c) * psi[0] + ScalarExpr(-s) * psi[1],
                                ScalarExpr(s) * psi[0] + ScalarExpr(c) * psi[1],
                                uu * psi[2]};
    CHECK(yukawa_expand(H1p, H2p, ph, psip, rep) == yukawa_expand(H1, H2, ph, psi, rep));
}

TEST_CASE_METHOD(CliffordFixture, "dirac operator assembly", "[clifford]") {
    SECTION("free flat operator") {
        DiracOperator d = dirac_operator(ConnectionMatrix::zero(ext, 1), rep);
        for (int mu = 0; mu < 4; ++mu)
            CHECK(d.deriv[static_cast<size_t>(mu)] ==
                  ScalarExpr::imag_unit() * to_expr(rep.gamma[static_cast<size_t>(mu)]));
        CHECK(d.constant.is_zero());
    }
    SECTION("abelian potential with the discrete axion leg") {
        FormMatrix m(ext, 1);
        m.at(0, 0) = alpha_one_form() +
                     wedge(scalar(ScalarExpr::imag_unit() * ScalarExpr::atom(phi)), gen(4));
        DiracOperator d = dirac_operator(ConnectionMatrix::make(m), rep);
        XMat expect(4);
        int ts[4] = {t0, t1, t2, t3};
        for (int mu = 0; mu < 4; ++mu)
            expect = expect + (ScalarExpr::imag_unit() *
                               (ScalarExpr::imag_unit() * ScalarExpr::atom(ts[mu]))) *
                                  to_expr(rep.gamma[static_cast<size_t>(mu)]);
        expect = expect + (ScalarExpr::imag_unit() * ScalarExpr::atom(phi)) *
                              to_expr(rep.gamma5);
        CHECK(d.constant == expect);
    }
    SECTION("discrete block carries the yukawa insertion") {
        FormMatrix m(ext, 3);
        m.at(0, 2) = wedge(scalar(ScalarExpr::atom(h1)), gen(4));
        m.at(1, 2) = wedge(scalar(ScalarExpr::atom(h2)), gen(4));
        m.at(2, 0) = wedge(scalar(-conj(ScalarExpr::atom(h1))), gen(4));
        m.at(2, 1) = wedge(scalar(-conj(ScalarExpr::atom(h2))), gen(4));
        DiracOperator d = dirac_operator(ConnectionMatrix::make(m), rep);
        for (int s = 0; s < 4; ++s)
            for (int t = 0; t < 4; ++t) {
                CHECK(d.constant.at(0 * 4 + s, 2 * 4 + t) ==
                      ScalarExpr(rep.gamma5.at(s, t)) * ScalarExpr::atom(h1));
                CHECK(d.constant.at(2 * 4 + s, 0 * 4 + t) ==
                      ScalarExpr(rep.gamma5.at(s, t)) * (-conj(ScalarExpr::atom(h1))));
            }
    }
    SECTION("spin connection term for the cosmological family") {
        MetricSpec gm;
        gm.a = {ScalarExpr::one(), ScalarExpr::atom(ascale), ScalarExpr::atom(ascale),
                ScalarExpr::atom(ascale)};
        gm.sigma = phi;
        gm.exp_half_sigma = ScalarExpr::one();
        DiracOperator d = dirac_operator(ConnectionMatrix::zero(ext, 1), rep, gm);
        // hand substitution into the displayed operator gives
        // constant = -(3/2) (a'/a) i gamma^0
        ScalarExpr coeff = GaussRat{Rational(-3, 2)} *
                           (ScalarExpr::atom(ascale).inverse() *
                            ScalarExpr::atom(ascale, DerivIndex{}.raised(0)));
        XMat expect = (ScalarExpr::imag_unit() * coeff) * to_expr(rep.gamma[0]);
        CHECK(d.constant == expect);
        for (int mu = 1; mu < 4; ++mu)
            CHECK(d.deriv[static_cast<size_t>(mu)] ==
                  ScalarExpr::imag_unit() * (ScalarExpr::atom(ascale).inverse() *
                                             to_expr(rep.gamma[static_cast<size_t>(mu)])));
    }
}

TEST_CASE_METHOD(CliffordFixture, "see-saw toy diagonalization", "[clifford]") {
    SeesawResult r = seesaw_masses({1.0, 0.0}, 100.0);
    double root = std::sqrt(2501.0);
    CHECK(r.light == Catch::Approx(50.0 - root).epsilon(1e-12));
    CHECK(r.heavy == Catch::Approx(50.0 + root).epsilon(1e-12));
    CHECK(r.light == Catch::Approx(-0.009999000199).epsilon(1e-9));
    CHECK(r.heavy == Catch::Approx(100.009999000199).epsilon(1e-12));

    SeesawResult z = seesaw_masses({0.0, 0.0}, 5.0);
    CHECK(z.light == 0.0);
    CHECK(z.heavy == 5.0);
    CHECK_THROWS_AS(seesaw_masses({1.0, 0.0}, 0.0), Error);

    auto [det, tr] = seesaw_invariants(GaussRat{Rational(1)}, Rational(100));
    CHECK(det == Rational(-1));
    CHECK(tr == Rational(100));
    auto [det2, tr2] = seesaw_invariants(GaussRat{Rational(3), Rational(4)}, Rational(7));
    CHECK(det2 == Rational(-25));
    CHECK(tr2 == Rational(7));
    // floating eigenvalue product agrees with the exact determinant
    SeesawResult c = seesaw_masses({3.0, 4.0}, 7.0);
    CHECK(c.light * c.heavy == Catch::Approx(-25.0).epsilon(1e-12));
}
