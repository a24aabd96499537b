#pragma once

#include "gradform/expr.hpp"

#include <random>
#include <vector>

namespace gradform::testing {

/// Deterministic random scalar expressions over a fixed symbol pool.
/// Used by the property suites; everything is seeded explicitly.
struct ExprGen {
    std::mt19937 rng;
    std::vector<int> fields;     // plain field ids
    int max_terms = 3;
    int max_atoms = 2;
    int max_jet = 1;

    explicit ExprGen(uint32_t seed, std::vector<int> field_ids)
        : rng(seed), fields(std::move(field_ids)) {}

    int uniform(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    GaussRat coeff() {
        GaussRat c{Rational(uniform(-3, 3)), Rational(uniform(-1, 1))};
        if (c.is_zero()) c = GaussRat::one();
        return c;
    }

    DerivIndex deriv() {
        DerivIndex d;
        int n = uniform(0, max_jet);
        for (int i = 0; i < n; ++i) d = d.raised(uniform(0, kCoordCount - 1));
        return d;
    }

    ScalarExpr atom() {
        int f = fields[static_cast<size_t>(uniform(0, static_cast<int>(fields.size()) - 1))];
        bool cj = symbol_info(f).reality == Reality::Complex && uniform(0, 1) == 1;
        return ScalarExpr::atom(f, deriv(), cj, uniform(1, 2));
    }

    ScalarExpr expr() {
        ScalarExpr e;
        int nt = uniform(1, max_terms);
        for (int t = 0; t < nt; ++t) {
            ScalarExpr m{coeff()};
            int na = uniform(0, max_atoms);
            for (int a = 0; a < na; ++a) m *= atom();
            e += m;
        }
        return e;
    }
};

}  // namespace gradform::testing
