#include "gradform/json_io.hpp"
#include "gradform/latex.hpp"

#include "support/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace gradform;

namespace {

struct IoFixture {
    int phi, zc, theta, Asym;
    IoFixture() {
        auto& tab = SymbolTable::instance();
        tab.reset();
        phi = tab.declare_field("phi", Reality::Real);
        zc = tab.declare_field("z", Reality::Complex);
        theta = tab.declare_field("theta", Reality::Real);
        Asym = tab.declare_matrix_symbol("A", MatrixKind::Unitary);
    }
};

GradedForm random_form(gradform::testing::ExprGen& gen, AlgebraSpec alg) {
    GradedForm f(alg);
    int nt = gen.uniform(1, 3);
    for (int t = 0; t < nt; ++t) {
        GenMono mono;
        for (int g = 0; g < alg.gens(); ++g)
            if (gen.uniform(0, 1)) mono.push_back(static_cast<uint8_t>(g));
        CoeffMatrix c(alg.n);
        for (int i = 0; i < alg.n; ++i)
            for (int j = 0; j < alg.n; ++j) c.at(i, j) = NcPoly(gen.expr());
        f += GradedForm::term(alg, mono, c);
    }
    return f;
}

}  // namespace

TEST_CASE_METHOD(IoFixture, "graded form JSON round trip is bit exact", "[io]") {
    gradform::testing::ExprGen gen(2025, {phi, zc});
    for (int rep = 0; rep < 100; ++rep) {
        AlgebraSpec alg{gen.uniform(1, 4), gen.uniform(0, 2), gen.uniform(1, 2)};
        GradedForm f = random_form(gen, alg);
        json j1 = form_to_json(f);
        GradedForm f2 = form_from_json(j1);
        CHECK(f2 == f);
        CHECK(form_to_json(f2).dump() == j1.dump());
    }
}

TEST_CASE_METHOD(IoFixture, "noncommutative entries round trip structurally", "[io]") {
    AlgebraSpec alg{4, 1, 1};
    NcPoly word = NcPoly::symbol(Asym).partial(0) * NcPoly::symbol(Asym, {}, true) +
                  ScalarExpr::atom(phi) * NcPoly::one();
    CoeffMatrix c(1);
    c.at(0, 0) = word;
    GradedForm f = GradedForm::term(alg, {0}, c);
    json j = form_to_json(f);
    GradedForm f2 = form_from_json(j);
    CHECK(f2 == f);
    CHECK(form_to_json(f2).dump() == j.dump());
}

TEST_CASE_METHOD(IoFixture, "differential spec JSON and certification output", "[io]") {
    AlgebraSpec alg{4, 1, 1};
    DifferentialSpec s;
    s.alg = alg;
    s.terms.push_back({GradedForm::unit(alg), {4}});
    json j = diffspec_to_json(s);
    DifferentialSpec s2 = diffspec_from_json(j);
    CHECK(diffspec_to_json(s2).dump() == j.dump());
    CHECK(check_nilpotent(s2).certified);
    CHECK(nilpotency_to_json(check_nilpotent(s2))["certified"] == true);

    // violating spec keeps its witness through the serializer
    DifferentialSpec bad;
    bad.alg = alg;
    bad.terms.push_back(
        {wedge(GradedForm::scalar(alg, parse_expr("x0")),
               wedge(GradedForm::generator(alg, 1), GradedForm::generator(alg, 2))),
         {4}});
    json jb = nilpotency_to_json(check_nilpotent(diffspec_from_json(diffspec_to_json(bad))));
    CHECK(jb["certified"] == false);
    CHECK(jb["violation"]["reason"] == "square");
    CHECK(jb["violation"]["monomial"] == json({0, 1, 2, 4}));
}

TEST_CASE_METHOD(IoFixture, "connection JSON mirrors the form matrices", "[io]") {
    AlgebraSpec alg{4, 1, 1};
    FormMatrix m(alg, 2);
    m.at(0, 1) = wedge(GradedForm::scalar(alg, ScalarExpr::atom(zc)),
                       GradedForm::generator(alg, 0));
    m.at(1, 0) = wedge(GradedForm::scalar(alg, -conj(ScalarExpr::atom(zc))),
                       GradedForm::generator(alg, 0));
    ConnectionMatrix conn = ConnectionMatrix::make(m, true);
    json j = connection_to_json(conn);
    ConnectionMatrix c2 = connection_from_json(j);
    CHECK(connection_to_json(c2).dump() == j.dump());
    CHECK(c2.skew_hermitian_declared());
    CHECK(c2.matrix() == conn.matrix());
}

TEST_CASE_METHOD(IoFixture, "manifest loading", "[io]") {
    json manifest = json::parse(R"({
      "fields": [
        {"name": "sigma2", "reality": "real"},
        {"name": "b_0", "kind": "invertible"},
        {"name": "b_1", "kind": "invertible"},
        {"name": "b_2", "kind": "invertible"},
        {"name": "b_3", "kind": "invertible", "coords": [0, 1]},
        {"name": "F2", "kind": "exp", "base": "sigma2", "factor": "1/2"},
        {"name": "B", "kind": "matrix", "matrix_kind": "unitary"}
      ],
      "vierbein": ["b_0", "b_1", "b_2", "b_3"],
      "sigma": "sigma2",
      "exp_half_sigma": "F2"
    })");
    auto gm = load_manifest(manifest);
    REQUIRE(gm.has_value());
    CHECK(gm->sigma == *SymbolTable::instance().find("sigma2"));
    CHECK(gm->a[3] == ScalarExpr::symbol("b_3"));
    CHECK(partial(gm->a[3], 2).is_zero());  // restricted coordinate dependence
    CHECK(gm->exp_sigma() == ScalarExpr::symbol("F2").pow(2));

    json no_metric = json::parse(R"({"fields": [{"name": "only", "reality": "real"}]})");
    CHECK_FALSE(load_manifest(no_metric).has_value());

    json bad = manifest;
    bad["vierbein"][0] = "sigma2";  // not invertible
    CHECK_THROWS_AS(load_manifest(bad), Error);
}

TEST_CASE_METHOD(IoFixture, "report serialization is deterministic", "[io]") {
    DerivationReport rep;
    rep.name = "demo";
    rep.claim("a", "first", "x", "x", true);
    rep.claim("b", "second", "y", "z", false);
    rep.elapsed_ms = 123;
    json j = report_to_json(rep);
    CHECK(j["all_pass"] == false);
    CHECK(j["claims"].size() == 2);
    CHECK_FALSE(j.contains("elapsed_ms"));
    CHECK(report_to_json(rep, true)["elapsed_ms"] == 123);
    CHECK(report_to_json(rep).dump() == j.dump());
}

TEST_CASE_METHOD(IoFixture, "latex rendering", "[io]") {
    ScalarExpr e = GaussRat{Rational(3, 2)} * (ScalarExpr::atom(phi) *
                                               partial(ScalarExpr::atom(phi), 0)) -
                   ScalarExpr::imag_unit() * conj(ScalarExpr::atom(zc));
    std::string tex = latex(e);
    CHECK(tex.find("\\tfrac{3}{2}") != std::string::npos);
    CHECK(tex.find("\\partial_{0}\\phi") != std::string::npos);
    CHECK(tex.find("\\overline{") != std::string::npos);

    AlgebraSpec alg{4, 1, 1};
    GradedForm f = wedge(GradedForm::scalar(alg, ScalarExpr::atom(phi)),
                         wedge(GradedForm::generator(alg, 0), GradedForm::generator(alg, 4)));
    std::string ftex = latex(f);
    CHECK(ftex.find("\\mathrm{d}x^{0}\\wedge \\xi^{1}") != std::string::npos);

    DerivationReport rep;
    rep.name = "demo";
    rep.claim("a", "claim text", "lhs", "rhs", true);
    CHECK(latex(rep).find("\\checkmark") != std::string::npos);
}
