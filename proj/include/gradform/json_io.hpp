#pragma once

#include "gradform/models.hpp"
#include "gradform/parser.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace gradform {

using nlohmann::json;

// --- scalar expressions: canonical text is the wire format -------------------

inline json expr_to_json(const ScalarExpr& e) { return to_string(e); }
inline ScalarExpr expr_from_json(const json& j) { return parse_expr(j.get<std::string>()); }

// --- noncommutative entries ---------------------------------------------------

inline json ncpoly_to_json(const NcPoly& p) {
    if (p.is_scalar()) return to_string(p.scalar());
    json words = json::array();
    for (const auto& t : p.terms()) {
        json word = json::array();
        for (const auto& a : t.word) {
            json atom;
            atom["sym"] = symbol_info(a.sym).name;
            json deriv = json::array();
            for (int i = 0; i < a.deriv.len; ++i) deriv.push_back(a.deriv.idx[i]);
            atom["deriv"] = deriv;
            atom["dagger"] = a.dag;
            word.push_back(atom);
        }
        words.push_back({{"coeff", to_string(t.coeff)}, {"word", word}});
    }
    return json{{"words", words}};
}

inline NcPoly ncpoly_from_json(const json& j) {
    if (j.is_string()) return NcPoly(parse_expr(j.get<std::string>()));
    NcPoly out;
    for (const auto& w : j.at("words")) {
        NcPoly word = NcPoly(parse_expr(w.at("coeff").get<std::string>()));
        for (const auto& a : w.at("word")) {
            auto id = SymbolTable::instance().find(a.at("sym").get<std::string>());
            if (!id) throw Error("unknown matrix symbol in JSON: " + a.at("sym").get<std::string>());
            DerivIndex d;
            for (int idx : a.at("deriv")) d = d.raised(idx);
            word *= NcPoly::symbol(*id, d, a.value("dagger", false));
        }
        out += word;
    }
    return out;
}

// --- graded forms --------------------------------------------------------------

inline json algebra_to_json(const AlgebraSpec& a) {
    return json{{"m", a.m}, {"k", a.k}, {"n", a.n}};
}
inline AlgebraSpec algebra_from_json(const json& j) {
    return AlgebraSpec{j.at("m").get<int>(), j.at("k").get<int>(), j.at("n").get<int>()};
}

inline json form_to_json(const GradedForm& f) {
    json terms = json::array();
    for (const auto& [mono, c] : f.terms()) {
        json coeff = json::array();
        for (int i = 0; i < c.n(); ++i) {
            json row = json::array();
            for (int j = 0; j < c.n(); ++j) row.push_back(ncpoly_to_json(c.at(i, j)));
            coeff.push_back(row);
        }
        terms.push_back({{"monomial", mono}, {"coeff", coeff}});
    }
    json out = algebra_to_json(f.algebra());
    out["terms"] = terms;
    return out;
}

inline GradedForm form_from_json(const json& j) {
    AlgebraSpec alg = algebra_from_json(j);
    GradedForm out(alg);
    for (const auto& t : j.at("terms")) {
        GenMono mono;
        for (int g : t.at("monomial")) mono.push_back(static_cast<uint8_t>(g));
        CoeffMatrix c(alg.n);
        const json& rows = t.at("coeff");
        for (int i = 0; i < alg.n; ++i)
            for (int jj = 0; jj < alg.n; ++jj) c.at(i, jj) = ncpoly_from_json(rows.at(i).at(jj));
        out.accumulate(mono, c);
    }
    return out;
}

// --- differential specs ---------------------------------------------------------

inline json diffspec_to_json(const DifferentialSpec& s) {
    json terms = json::array();
    for (const auto& t : s.terms)
        terms.push_back({{"omega", form_to_json(t.omega)}, {"xi", t.xi}});
    json out;
    out["algebra"] = algebra_to_json(s.alg);
    out["alpha"] = to_string(ScalarExpr(s.alpha));
    out["terms"] = terms;
    out["sigma_odd"] = s.sigma_odd ? form_to_json(*s.sigma_odd) : json(nullptr);
    return out;
}

inline DifferentialSpec diffspec_from_json(const json& j) {
    DifferentialSpec s;
    s.alg = algebra_from_json(j.at("algebra"));
    auto alpha = parse_expr(j.at("alpha").get<std::string>()).as_constant();
    if (!alpha) throw Error("alpha must be a constant");
    s.alpha = *alpha;
    for (const auto& t : j.at("terms")) {
        DifferentialSpec::Term term{form_from_json(t.at("omega")), {}};
        for (int g : t.at("xi")) term.xi.push_back(static_cast<uint8_t>(g));
        s.terms.push_back(std::move(term));
    }
    if (!j.at("sigma_odd").is_null()) s.sigma_odd = form_from_json(j.at("sigma_odd"));
    return s;
}

inline json nilpotency_to_json(const NilpotencyResult& r) {
    json out;
    out["certified"] = r.certified;
    if (r.violation) {
        out["violation"] = {{"reason", r.violation->reason},
                            {"monomial", r.violation->monomial},
                            {"coeff", r.violation->coeff_text}};
    } else {
        out["violation"] = nullptr;
    }
    return out;
}

// --- connections -----------------------------------------------------------------

inline json connection_to_json(const ConnectionMatrix& c) {
    json entries = json::array();
    for (int i = 0; i < c.ns(); ++i) {
        json row = json::array();
        for (int j = 0; j < c.ns(); ++j) row.push_back(form_to_json(c.matrix().at(i, j)));
        entries.push_back(row);
    }
    return json{{"ns", c.ns()},
                {"algebra", algebra_to_json(c.matrix().algebra())},
                {"skew_hermitian", c.skew_hermitian_declared()},
                {"entries", entries}};
}

inline ConnectionMatrix connection_from_json(const json& j) {
    AlgebraSpec alg = algebra_from_json(j.at("algebra"));
    int ns = j.at("ns").get<int>();
    FormMatrix m(alg, ns);
    for (int i = 0; i < ns; ++i)
        for (int jj = 0; jj < ns; ++jj)
            m.at(i, jj) = form_from_json(j.at("entries").at(i).at(jj));
    return ConnectionMatrix::make(std::move(m), j.value("skew_hermitian", false));
}

// --- symbol manifests ---------------------------------------------------------------

/// Declares fields from a manifest and returns the metric family when one is
/// described. Entries: {"name":..., "kind":"field"|"invertible"|"exp"|"matrix",
/// "reality":"real"|"complex", "coords":[...], "base":..., "factor":...,
/// "matrix_kind":"generic"|"unitary"|"skew"}.
inline std::optional<MetricSpec> load_manifest(const json& j) {
    auto& tab = SymbolTable::instance();
    for (const auto& f : j.value("fields", json::array())) {
        std::string name = f.at("name").get<std::string>();
        if (tab.find(name)) continue;
        std::string kind = f.value("kind", "field");
        std::vector<int> coords = SymbolTable::all_coords();
        if (f.contains("coords")) {
            coords.clear();
            for (int c : f.at("coords")) coords.push_back(c);
        }
        if (kind == "field") {
            Reality r = f.value("reality", "real") == "real" ? Reality::Real : Reality::Complex;
            tab.declare_field(name, r, coords);
        } else if (kind == "invertible") {
            tab.declare_invertible(name, coords);
        } else if (kind == "exp") {
            auto base = tab.find(f.at("base").get<std::string>());
            if (!base) throw Error("exp unit base not declared: " + name);
            auto factor = parse_expr(f.at("factor").get<std::string>()).as_constant();
            if (!factor) throw Error("exp unit factor must be constant: " + name);
            tab.declare_exp_unit(name, *base, *factor);
        } else if (kind == "matrix") {
            std::string mk = f.value("matrix_kind", "generic");
            MatrixKind m = mk == "unitary"  ? MatrixKind::Unitary
                           : mk == "skew"   ? MatrixKind::SkewHermitian
                                            : MatrixKind::Generic;
            tab.declare_matrix_symbol(name, m, coords);
        } else {
            throw Error("unknown field kind in manifest: " + kind);
        }
    }
    if (!j.contains("vierbein")) return std::nullopt;
    MetricSpec gm;
    const auto& v = j.at("vierbein");
    for (int i = 0; i < 4; ++i) {
        gm.a[static_cast<size_t>(i)] = parse_expr(v.at(static_cast<size_t>(i)).get<std::string>());
        if (!gm.a[static_cast<size_t>(i)].is_invertible_monomial())
            throw Error("vierbein entries must be invertible monomials");
    }
    auto sigma = tab.find(j.at("sigma").get<std::string>());
    if (!sigma) throw Error("sigma field not declared");
    gm.sigma = *sigma;
    gm.exp_half_sigma = parse_expr(j.at("exp_half_sigma").get<std::string>());
    if (!gm.exp_half_sigma.is_invertible_monomial())
        throw Error("exp_half_sigma must be an invertible monomial");
    return gm;
}

// --- derivation reports ----------------------------------------------------------------

inline json report_to_json(const DerivationReport& rep, bool with_timing = false) {
    json claims = json::array();
    for (const auto& c : rep.claims)
        claims.push_back({{"id", c.id},
                          {"description", c.description},
                          {"expected", c.expected},
                          {"computed", c.computed},
                          {"pass", c.pass}});
    json artifacts = json::array();
    for (const auto& [label, text] : rep.artifacts)
        artifacts.push_back({{"label", label}, {"text", text}});
    json out;
    out["name"] = rep.name;
    out["claims"] = claims;
    out["artifacts"] = artifacts;
    out["all_pass"] = rep.all_pass();
    if (with_timing) out["elapsed_ms"] = rep.elapsed_ms;
    return out;
}

}  // namespace gradform
