#pragma once

#include "gradform/conn.hpp"
#include "gradform/geom.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gradform {

template <typename T>
struct SquareMat {
    int n = 0;
    std::vector<T> e;

    SquareMat() = default;
    explicit SquareMat(int size) : n(size), e(static_cast<size_t>(size * size)) {}

    static SquareMat identity(int size) {
        SquareMat m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = T(1);
        return m;
    }

    T& at(int i, int j) { return e[static_cast<size_t>(i * n + j)]; }
    const T& at(int i, int j) const { return e[static_cast<size_t>(i * n + j)]; }

    bool is_zero() const {
        for (const auto& x : e)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const SquareMat& a, const SquareMat& b) {
        return a.n == b.n && a.e == b.e;
    }
    friend SquareMat operator+(const SquareMat& a, const SquareMat& b) {
        SquareMat out(a.n);
        for (size_t i = 0; i < a.e.size(); ++i) out.e[i] = a.e[i] + b.e[i];
        return out;
    }
    friend SquareMat operator-(const SquareMat& a) {
        SquareMat out(a.n);
        for (size_t i = 0; i < a.e.size(); ++i) out.e[i] = -a.e[i];
        return out;
    }
    friend SquareMat operator-(const SquareMat& a, const SquareMat& b) { return a + (-b); }
    friend SquareMat operator*(const SquareMat& a, const SquareMat& b) {
        SquareMat out(a.n);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                T acc{};
                for (int l = 0; l < a.n; ++l) acc += a.at(i, l) * b.at(l, j);
                out.at(i, j) = acc;
            }
        return out;
    }
    friend SquareMat operator*(const T& c, const SquareMat& a) {
        SquareMat out(a.n);
        for (size_t i = 0; i < a.e.size(); ++i) out.e[i] = c * a.e[i];
        return out;
    }
};

using CMat = SquareMat<GaussRat>;   // exact complex matrix
using XMat = SquareMat<ScalarExpr>; // symbolic matrix

inline CMat dagger(const CMat& a) {
    CMat out(a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) out.at(i, j) = a.at(j, i).conj();
    return out;
}

inline XMat to_expr(const CMat& a) {
    XMat out(a.n);
    for (size_t i = 0; i < a.e.size(); ++i) out.e[i] = ScalarExpr(a.e[i]);
    return out;
}

/// Kronecker product over a module-major layout: row (module i, spinor s)
/// maps to i*4 + s.
inline XMat kron(const XMat& spinor_part, const XMat& module_part) {
    XMat out(spinor_part.n * module_part.n);
    for (int i = 0; i < module_part.n; ++i)
        for (int j = 0; j < module_part.n; ++j)
            for (int s = 0; s < spinor_part.n; ++s)
                for (int t = 0; t < spinor_part.n; ++t)
                    out.at(i * spinor_part.n + s, j * spinor_part.n + t) =
                        module_part.at(i, j) * spinor_part.at(s, t);
    return out;
}

/// Exact Dirac matrices in signature (-,+,+,+): {gamma^a, gamma^b} =
/// -2 eta^{ab}, gamma^0 hermitian, spatial gammas antihermitian, and
/// gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3.
struct GammaRep {
    std::array<CMat, 4> gamma;
    CMat gamma5;

    static GammaRep dirac() {
        GammaRep rep;
        auto g = [](std::initializer_list<GaussRat> v) {
            CMat m(4);
            auto it = v.begin();
            for (int i = 0; i < 16; ++i) m.e[static_cast<size_t>(i)] = *it++;
            return m;
        };
        GaussRat o{0}, one{1}, mone{-1}, I = GaussRat::imag_unit(), mI = -GaussRat::imag_unit();
        rep.gamma[0] = g({one, o, o, o,   o, one, o, o,   o, o, mone, o,   o, o, o, mone});
        rep.gamma[1] = g({o, o, o, one,   o, o, one, o,   o, mone, o, o,   mone, o, o, o});
        rep.gamma[2] = g({o, o, o, mI,    o, o, I, o,     o, I, o, o,      mI, o, o, o});
        rep.gamma[3] = g({o, o, one, o,   o, o, o, mone,  mone, o, o, o,   o, one, o, o});
        CMat prod = rep.gamma[0] * rep.gamma[1] * rep.gamma[2] * rep.gamma[3];
        rep.gamma5 = GaussRat::imag_unit() * prod;
        return rep;
    }

    /// Sigma_{ab} = (i/4) [gamma_a, gamma_b] with indices lowered by eta.
    CMat sigma_lower(int a, int b, const std::array<int, 4>& eta) const {
        CMat ga = GaussRat{eta[static_cast<size_t>(a)]} * gamma[static_cast<size_t>(a)];
        CMat gb = GaussRat{eta[static_cast<size_t>(b)]} * gamma[static_cast<size_t>(b)];
        return GaussRat{Rational(1, 4)} * (GaussRat::imag_unit() * (ga * gb - gb * ga));
    }
};

struct CliffordCheck {
    bool ok = true;
    std::string detail;
};

/// Exact verification of all representation invariants.
inline CliffordCheck verify_clifford(const GammaRep& rep,
                                     std::array<int, 4> eta = {-1, 1, 1, 1}) {
    auto fail = [](std::string what) { return CliffordCheck{false, std::move(what)}; };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            CMat anti = rep.gamma[static_cast<size_t>(a)] * rep.gamma[static_cast<size_t>(b)] +
                        rep.gamma[static_cast<size_t>(b)] * rep.gamma[static_cast<size_t>(a)];
            CMat expect(4);
            if (a == b) expect = GaussRat{-2 * eta[static_cast<size_t>(a)]} * CMat::identity(4);
            if (!(anti == expect))
                return fail("anticommutator {gamma^" + std::to_string(a) + ", gamma^" +
                            std::to_string(b) + "}");
        }
    if (!(dagger(rep.gamma[0]) == rep.gamma[0])) return fail("gamma^0 hermiticity");
    for (int a = 1; a < 4; ++a)
        if (!(dagger(rep.gamma[static_cast<size_t>(a)]) == -rep.gamma[static_cast<size_t>(a)]))
            return fail("gamma^" + std::to_string(a) + " antihermiticity");
    CMat g5 = rep.gamma5;
    CMat prod = GaussRat::imag_unit() * (rep.gamma[0] * rep.gamma[1] * rep.gamma[2] *
                                         rep.gamma[3]);
    if (!(g5 == prod)) return fail("gamma5 product form");
    if (!(g5 * g5 == CMat::identity(4))) return fail("gamma5 squares to one");
    if (!(dagger(g5) == g5)) return fail("gamma5 hermiticity");
    return {};
}

/// Clifford action on one-forms: c(dx^mu) = i gamma~^mu, c(xi) = gamma5,
/// with gamma~^mu = e^mu_a gamma^a when a metric family is supplied.
inline XMat clifford_action(const GradedForm& one_form, const GammaRep& rep,
                            const std::optional<MetricSpec>& gm = std::nullopt) {
    if (one_form.algebra().n != 1 || one_form.algebra().m != 4 || one_form.algebra().k != 1)
        throw Error("clifford action expects scalar forms over 4+1 generators");
    if (!(one_form.homogeneous_degree() == 1))
        throw Error("clifford action is defined on one-forms");
    XMat out(4);
    for (const auto& [mono, c] : one_form.terms()) {
        ScalarExpr coeff = c.at(0, 0).scalar();
        int g = mono[0];
        if (g < 4) {
            ScalarExpr scale = gm ? gm->a[static_cast<size_t>(g)].inverse() : ScalarExpr::one();
            out = out + (GaussRat::imag_unit() * (coeff * scale)) *
                            to_expr(rep.gamma[static_cast<size_t>(g)]);
        } else {
            out = out + coeff * to_expr(rep.gamma5);
        }
    }
    return out;
}

// --- spinors and the Yukawa expansion ---------------------------------------

enum class Chirality { Left, Right };

/// Commuting symbolic 4-spinor. The chirality convention is fixed by the
/// reproduced Yukawa expansion: gamma5 psi_L = +psi_L, gamma5 psi_R = -psi_R,
/// so P_L = (1+gamma5)/2 and P_R = (1-gamma5)/2.
struct Spinor {
    std::array<ScalarExpr, 4> comp;

    friend Spinor operator+(const Spinor& a, const Spinor& b) {
        Spinor out;
        for (int i = 0; i < 4; ++i)
            out.comp[static_cast<size_t>(i)] =
                a.comp[static_cast<size_t>(i)] + b.comp[static_cast<size_t>(i)];
        return out;
    }
    friend Spinor operator*(const ScalarExpr& c, const Spinor& a) {
        Spinor out;
        for (int i = 0; i < 4; ++i) out.comp[static_cast<size_t>(i)] = c * a.comp[static_cast<size_t>(i)];
        return out;
    }
};

/// Declares two complex component fields and projects a generic 4-spinor
/// onto the requested chirality, so the constraint holds by construction.
inline Spinor make_chiral_spinor(const std::string& prefix, Chirality ch,
                                 const GammaRep& rep) {
    auto& tab = SymbolTable::instance();
    std::array<ScalarExpr, 4> v;
    for (int i = 0; i < 4; ++i) {
        std::string name = prefix + "_" + std::to_string(i + 1);
        int id = tab.find(name) ? *tab.find(name)
                                : tab.declare_field(name, Reality::Complex);
        v[static_cast<size_t>(i)] = ScalarExpr::atom(id);
    }
    GaussRat half{Rational(1, 2)};
    GaussRat sign = (ch == Chirality::Left) ? GaussRat{1} : GaussRat{-1};
    Spinor out;
    for (int i = 0; i < 4; ++i) {
        ScalarExpr acc = half * v[static_cast<size_t>(i)];
        for (int j = 0; j < 4; ++j)
            acc += (half * sign * rep.gamma5.at(i, j)) * v[static_cast<size_t>(j)];
        out.comp[static_cast<size_t>(i)] = acc;
    }
    return out;
}

inline bool chirality_holds(const Spinor& s, Chirality ch, const GammaRep& rep) {
    GaussRat sign = (ch == Chirality::Left) ? GaussRat{1} : GaussRat{-1};
    for (int i = 0; i < 4; ++i) {
        ScalarExpr acc;
        for (int j = 0; j < 4; ++j)
            acc += ScalarExpr(rep.gamma5.at(i, j)) * s.comp[static_cast<size_t>(j)];
        if (!(acc == ScalarExpr(sign) * s.comp[static_cast<size_t>(i)])) return false;
    }
    return true;
}

/// psi-bar M psi' with psi-bar = psi^dag gamma^0 and M a 4x4 insertion.
inline ScalarExpr spinor_bilinear(const Spinor& left, const XMat& insertion,
                                  const Spinor& right, const GammaRep& rep) {
    ScalarExpr acc;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l)
                acc += conj(left.comp[static_cast<size_t>(i)]) *
                       ScalarExpr(rep.gamma[0].at(i, j)) * insertion.at(j, l) *
                       right.comp[static_cast<size_t>(l)];
    return acc;
}

/// Sum_{ij} psibar_i gamma5 B_{ij} psi_j for a module-indexed coefficient
/// matrix of scalars.
inline ScalarExpr gamma5_pairing(const XMat& B, const std::vector<Spinor>& psi,
                                 const GammaRep& rep) {
    if (B.n != static_cast<int>(psi.size())) throw Error("pairing: size mismatch");
    XMat g5 = to_expr(rep.gamma5);
    ScalarExpr acc;
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) {
            if (B.at(i, j).is_zero()) continue;
            acc += B.at(i, j) * spinor_bilinear(psi[static_cast<size_t>(i)], g5,
                                                psi[static_cast<size_t>(j)], rep);
        }
    return acc;
}

/// The Yukawa / axion-fermion pairing of the electroweak connection's
/// discrete part for Psi = (psi_1L, psi_2L, psi_3R).
inline ScalarExpr yukawa_expand(const ScalarExpr& H1, const ScalarExpr& H2,
                                const ScalarExpr& phi, const std::vector<Spinor>& psi,
                                const GammaRep& rep) {
    if (psi.size() != 3) throw Error("yukawa_expand expects three spinors");
    XMat B(3);
    ScalarExpr iphi = ScalarExpr::imag_unit() * phi;
    B.at(0, 0) = iphi;
    B.at(1, 1) = iphi;
    B.at(2, 2) = iphi;
    B.at(0, 2) = H1;
    B.at(1, 2) = H2;
    B.at(2, 0) = -conj(H1);
    B.at(2, 1) = -conj(H2);
    return gamma5_pairing(B, psi, rep);
}

// --- Dirac operator assembly -------------------------------------------------

/// D = i gamma^a e^mu_a ( d_mu - (i/2) omega^{bc}_mu Sigma_{bc} + Omega_mu )
///   + gamma5 Omega_4, stored as per-coordinate derivative coefficients plus
/// a multiplication term, both (4 ns) x (4 ns) symbolic matrices.
struct DiracOperator {
    int ns = 1;
    std::array<XMat, 4> deriv;
    XMat constant;
};

inline DiracOperator dirac_operator(const ConnectionMatrix& conn, const GammaRep& rep,
                                    const std::optional<MetricSpec>& gm = std::nullopt) {
    const FormMatrix& om = conn.matrix();
    if (om.algebra().m != 4 || om.algebra().k != 1 || om.algebra().n != 1)
        throw Error("dirac operator expects scalar forms over 4+1 generators");
    int ns = om.ns();

    // split Omega into coordinate components and the discrete component
    std::array<XMat, 4> omega_mu{XMat(ns), XMat(ns), XMat(ns), XMat(ns)};
    XMat omega_4(ns);
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j)
            for (const auto& [mono, c] : om.at(i, j).terms()) {
                if (mono.size() != 1)
                    throw Error("dirac operator needs a one-form connection");
                ScalarExpr coeff = c.at(0, 0).scalar();
                if (mono[0] < 4)
                    omega_mu[static_cast<size_t>(mono[0])].at(i, j) = coeff;
                else
                    omega_4.at(i, j) = coeff;
            }

    DiracOperator out;
    out.ns = ns;
    XMat idmod = XMat::identity(ns);
    XMat constant(4 * ns);

    for (int mu = 0; mu < 4; ++mu) {
        ScalarExpr einv = gm ? gm->a[static_cast<size_t>(mu)].inverse() : ScalarExpr::one();
        XMat igamma = ScalarExpr::imag_unit() * (einv * to_expr(rep.gamma[static_cast<size_t>(mu)]));
        out.deriv[static_cast<size_t>(mu)] = kron(igamma, idmod);
        constant = constant + kron(igamma, omega_mu[static_cast<size_t>(mu)]);
    }

    if (gm) {
        std::array<int, 4> eta = gm->eta;
        CoordTable3 spn = spin_connection(*gm, christoffel(*gm));
        for (int mu = 0; mu < 4; ++mu) {
            XMat spin_term(4);
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c) {
                    // omega^{bc}_mu = omega^b_{mu c'} eta^{c'c} (diagonal eta)
                    ScalarExpr w = GaussRat{eta[static_cast<size_t>(c)]} *
                                   spn[static_cast<size_t>(b)][static_cast<size_t>(mu)]
                                      [static_cast<size_t>(c)];
                    if (w.is_zero()) continue;
                    spin_term = spin_term + w * to_expr(rep.sigma_lower(b, c, eta));
                }
            ScalarExpr einv = gm->a[static_cast<size_t>(mu)].inverse();
            XMat igamma = ScalarExpr::imag_unit() *
                          (einv * to_expr(rep.gamma[static_cast<size_t>(mu)]));
            XMat left = igamma * (ScalarExpr(GaussRat{Rational(-1, 2)} * GaussRat::imag_unit()) * spin_term);
            constant = constant + kron(left, idmod);
        }
    }

    constant = constant + kron(to_expr(rep.gamma5), omega_4);
    out.constant = constant;
    return out;
}

// --- see-saw toy --------------------------------------------------------------

struct SeesawResult {
    double light = 0;
    double heavy = 0;
};

/// Eigenvalues of [[0, m],[conj(m), M]], exact closed form evaluated in
/// floating point; the symbolic identities (trace, determinant) are exposed
/// separately for exact checks.
inline SeesawResult seesaw_masses(std::complex<double> m, double M) {
    if (!(M > 0)) throw Error("seesaw: M must be positive");
    double disc = std::sqrt(M * M + 4.0 * std::norm(m));
    return SeesawResult{(M - disc) / 2.0, (M + disc) / 2.0};
}

/// Exact invariants of the mass matrix: determinant -|m|^2 (= product of the
/// eigenvalues) and trace M (= their sum).
inline std::pair<Rational, Rational> seesaw_invariants(const GaussRat& m, const Rational& M) {
    Rational det = -(m * m.conj()).re;
    return {det, M};
}

}  // namespace gradform
