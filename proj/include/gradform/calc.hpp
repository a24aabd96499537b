#pragma once

#include "gradform/gform.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gradform {

/// Diagonal metric data over all m+k generators: per-generator vierbein
/// scale (an invertible monomial) and frame sign. The Grassmann slots carry
/// the identity extension (scale 1, sign +1) unless a discrete-direction
/// scale is supplied explicitly.
struct ExtendedMetric {
    AlgebraSpec alg;
    std::vector<ScalarExpr> vierbein;  // size m+k
    std::vector<int> eta;              // entries +-1, size m+k

    static ExtendedMetric minkowski(AlgebraSpec a) {
        ExtendedMetric g;
        g.alg = a;
        g.vierbein.assign(static_cast<size_t>(a.gens()), ScalarExpr::one());
        g.eta.assign(static_cast<size_t>(a.gens()), 1);
        if (a.m > 0) g.eta[0] = -1;
        return g;
    }
    static ExtendedMetric euclidean(AlgebraSpec a) {
        ExtendedMetric g = minkowski(a);
        g.eta[0] = 1;
        return g;
    }
    static ExtendedMetric diagonal(AlgebraSpec a, std::vector<ScalarExpr> scales,
                                   std::vector<int> signs) {
        if (static_cast<int>(scales.size()) == a.m) scales.resize(static_cast<size_t>(a.gens()), ScalarExpr::one());
        if (static_cast<int>(signs.size()) == a.m) signs.resize(static_cast<size_t>(a.gens()), 1);
        if (static_cast<int>(scales.size()) != a.gens() ||
            static_cast<int>(signs.size()) != a.gens())
            throw Error("extended metric needs one scale and sign per generator");
        for (const auto& s : scales)
            if (!s.is_invertible_monomial()) throw Error("vierbein scale must be invertible");
        for (int s : signs)
            if (s != 1 && s != -1) throw Error("frame signs must be +-1");
        return ExtendedMetric{a, std::move(scales), std::move(signs)};
    }

    ScalarExpr sqrt_det() const {
        ScalarExpr out = ScalarExpr::one();
        for (const auto& s : vierbein) out *= s;
        return out;
    }
    /// g^{gg} of the inverse extended metric (diagonal).
    ScalarExpr inv_metric(int g) const {
        return GaussRat{eta[static_cast<size_t>(g)]} *
               vierbein[static_cast<size_t>(g)].pow(-2);
    }
};

// --- generalized differentials ---------------------------------------------

/// d~ = alpha d (x) 1 + sum_i (omega_i (x) xi_{p_i}) ^ . + sigma_odd ^ .
/// The non-derivative part acts by left wedge with one odd element zeta.
struct DifferentialSpec {
    AlgebraSpec alg;
    GaussRat alpha = GaussRat::one();
    struct Term {
        GradedForm omega;  // even, closed
        GenMono xi;        // odd monomial in the Grassmann sector
    };
    std::vector<Term> terms;
    std::optional<GradedForm> sigma_odd;

    GradedForm zeta() const {
        GradedForm z(alg);
        for (const auto& t : terms)
            z += wedge(t.omega, GradedForm::term(alg, t.xi, CoeffMatrix::identity(alg.n)));
        if (sigma_odd) z += *sigma_odd;
        return z;
    }
};

struct NilpotencyViolation {
    std::string reason;      // "parity" or "square"
    GenMono monomial;        // offending monomial of d~^2(1), when reason == "square"
    std::string coeff_text;
};

struct NilpotencyResult {
    bool certified = false;
    std::optional<NilpotencyViolation> violation;
};

/// d~^2 acts as left wedge by  alpha d(zeta) + zeta ^ zeta,  so the operator
/// is nilpotent on every form iff that single element vanishes; a nonzero
/// monomial of it is the violation witness. Parity of the building blocks is
/// checked first (even omega_i, odd xi monomials, odd sigma).
inline NilpotencyResult check_nilpotent(const DifferentialSpec& spec) {
    auto parity_fail = [&](const std::string& what) {
        NilpotencyResult r;
        r.violation = NilpotencyViolation{"parity", {}, what};
        return r;
    };
    for (const auto& t : spec.terms) {
        for (const auto& [mono, c] : t.omega.terms())
            if (mono.size() % 2 != 0) return parity_fail("omega term of odd degree");
        if (t.xi.size() % 2 != 1) return parity_fail("xi monomial must be odd");
        for (uint8_t g : t.xi)
            if (!spec.alg.is_xi(g)) return parity_fail("xi monomial outside Grassmann sector");
    }
    if (spec.sigma_odd)
        for (const auto& [mono, c] : spec.sigma_odd->terms())
            if (mono.size() % 2 != 1) return parity_fail("sigma term of even degree");

    GradedForm z = spec.zeta();
    GradedForm square = spec.alpha * exterior_d(z) + wedge(z, z);
    if (square.is_zero()) return NilpotencyResult{true, std::nullopt};
    const auto& [mono, c] = *square.terms().begin();
    NcPoly head;
    for (int i = 0; i < c.n() && head.is_zero(); ++i)
        for (int j = 0; j < c.n() && head.is_zero(); ++j) head = c.at(i, j);
    NilpotencyResult r;
    r.violation = NilpotencyViolation{"square", mono, to_string(head)};
    return r;
}

/// A differential spec that passed certification; the only way to run
/// extended_d / delta.
class CertifiedDifferential {
public:
    static CertifiedDifferential certify(DifferentialSpec spec) {
        NilpotencyResult r = check_nilpotent(spec);
        if (!r.certified)
            throw Error("differential spec failed nilpotency certification (" +
                        r.violation->reason + ": " + r.violation->coeff_text + ")");
        CertifiedDifferential c;
        c.spec_ = std::move(spec);
        c.zeta_ = c.spec_.zeta();
        return c;
    }

    /// Plain exterior derivative as a trivially certified spec.
    static CertifiedDifferential plain(AlgebraSpec alg, GaussRat alpha = GaussRat::one()) {
        DifferentialSpec s;
        s.alg = alg;
        s.alpha = alpha;
        return certify(std::move(s));
    }

    const DifferentialSpec& spec() const { return spec_; }
    const GradedForm& zeta() const { return zeta_; }
    const AlgebraSpec& algebra() const { return spec_.alg; }

private:
    DifferentialSpec spec_;
    GradedForm zeta_{AlgebraSpec{}};
};

inline GradedForm extended_d(const CertifiedDifferential& d, const GradedForm& a) {
    return d.spec().alpha * exterior_d(a) + wedge(d.zeta(), a);
}

/// The graded-commutator differential evaluated on the unit:
/// delta(a_p) = d~(a_p) + (-1)^{p+1} a_p ^ d~(1), per homogeneous component.
inline GradedForm delta(const CertifiedDifferential& d, const GradedForm& a) {
    GradedForm out(a.algebra());
    for (const auto& [mono, c] : a.terms()) {
        GradedForm part = GradedForm::term(a.algebra(), mono, c);
        GradedForm image = extended_d(d, part);
        GradedForm tail = wedge(part, d.zeta());
        out += (mono.size() % 2 == 0) ? image - tail : image + tail;
    }
    return out;
}

// --- Berezin integration, Hodge duality, hermitian structure ---------------

/// Keeps only terms carrying the full Grassmann monomial, strips it, and
/// applies the reordering sign from moving the xi block left through the
/// coordinate one-forms. The result lives over the coordinate sector alone.
inline GradedForm berezin(const GradedForm& a) {
    AlgebraSpec out_alg = a.algebra();
    int m = out_alg.m, k = out_alg.k;
    out_alg.k = 0;
    GradedForm out(out_alg);
    for (const auto& [mono, c] : a.terms()) {
        int nxi = 0;
        GenMono dxpart;
        for (uint8_t g : mono)
            (g >= m) ? static_cast<void>(++nxi) : dxpart.push_back(g);
        if (nxi != k) continue;
        int p = static_cast<int>(dxpart.size());
        bool flip = (p * k) % 2 == 1;
        out.accumulate(dxpart, flip ? -c : c);
    }
    return out;
}

/// Extended Hodge dual with the epsilon convention eps_{0 1 ... (m+k-1)} = +1
/// in generator order; indices are raised by the diagonal extended metric
/// and the coefficient is daggered, so the map is conjugate linear.
inline GradedForm hodge(const GradedForm& a, const ExtendedMetric& gm) {
    if (a.algebra() != gm.alg) throw Error("hodge: metric algebra mismatch");
    auto deg = a.homogeneous_degree();
    if (!deg) throw Error("hodge requires a homogeneous form");
    GradedForm out(a.algebra());
    ScalarExpr sqrtg = gm.sqrt_det();
    for (const auto& [mono, c] : a.terms()) {
        GenMono comp;
        for (int g = 0; g < a.algebra().gens(); ++g)
            if (std::find(mono.begin(), mono.end(), static_cast<uint8_t>(g)) == mono.end())
                comp.push_back(static_cast<uint8_t>(g));
        ScalarExpr factor = sqrtg;
        for (uint8_t g : mono) factor *= gm.inv_metric(g);
        CoeffMatrix cc = factor * c.dagger();
        if (merge_sign(mono, comp) < 0) cc = -cc;
        out.accumulate(comp, cc);
    }
    return out;
}

/// Hermitian structure: the coefficient of the volume form in a ^ (*b).
inline CoeffMatrix hermitian(const GradedForm& a, const GradedForm& b,
                             const ExtendedMetric& gm) {
    auto da = a.homogeneous_degree(), db = b.homogeneous_degree();
    if (!da || !db || *da != *db)
        throw Error("hermitian structure needs homogeneous forms of equal degree");
    GradedForm p = wedge(a, hodge(b, gm));
    GenMono full;
    for (int g = 0; g < a.algebra().gens(); ++g) full.push_back(static_cast<uint8_t>(g));
    const CoeffMatrix* c = p.coeff(full);
    if (!c) return CoeffMatrix(a.algebra().n);
    return gm.sqrt_det().inverse() * (*c);
}

/// Density L of the extended integral: contributions come from the top
/// monomial only, with the (-1)^{mk} normalization of the Berezin ordering.
inline ScalarExpr slash_density(const GradedForm& a) {
    if (a.algebra().n != 1) throw Error("slash integral expects scalar coefficients (trace first)");
    GradedForm b = berezin(a);
    GenMono full;
    for (int g = 0; g < a.algebra().m; ++g) full.push_back(static_cast<uint8_t>(g));
    const CoeffMatrix* c = b.coeff(full);
    if (!c) return ScalarExpr::zero();
    ScalarExpr L = c->at(0, 0).scalar();
    if ((a.algebra().m * a.algebra().k) % 2 == 1) L = -L;
    return L;
}

/// Action integrals agree iff the Euler residual of their difference
/// vanishes for every listed field: total divergences are exactly the
/// kernel of the Euler operator on this jet class.
inline bool integrals_equal(const ScalarExpr& lhs, const ScalarExpr& rhs,
                            const std::vector<int>& fields) {
    ScalarExpr diff = lhs - rhs;
    for (int f : fields)
        if (!euler_derivative(diff, f).is_zero()) return false;
    return true;
}

/// Reinterpret a form over fewer Grassmann generators inside a larger
/// algebra (generator indices are preserved; only valid when the coordinate
/// sectors agree and no xi index overflows).
inline GradedForm embed(const GradedForm& a, AlgebraSpec target) {
    if (a.algebra().m != target.m || a.algebra().n != target.n ||
        a.algebra().k > target.k)
        throw Error("embed: incompatible algebras");
    GradedForm out(target);
    for (const auto& [mono, c] : a.terms()) out.accumulate(mono, c);
    return out;
}

}  // namespace gradform
