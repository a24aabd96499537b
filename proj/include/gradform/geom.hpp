#pragma once

#include "gradform/conn.hpp"

#include <array>
#include <utility>

namespace gradform {

/// Diagonal vierbein family e^a_mu = diag(a_0..a_3) with frame metric
/// eta = (-1,+,+,+), a dilaton field sigma scaling the discrete direction,
/// and e^{sigma/2} as the primitive unit (so conformal rescalings by
/// e^{sigma/2} stay inside the ring).
struct MetricSpec {
    std::array<ScalarExpr, 4> a;
    std::array<int, 4> eta{-1, 1, 1, 1};
    int sigma = -1;                // dilaton field id
    ScalarExpr exp_half_sigma;     // e^{sigma/2}, invertible monomial

    ScalarExpr exp_sigma() const { return exp_half_sigma.pow(2); }

    ScalarExpr metric(int mu) const {  // g_{mu mu}
        return GaussRat{eta[static_cast<size_t>(mu)]} * a[static_cast<size_t>(mu)].pow(2);
    }
    ScalarExpr inv_metric(int mu) const {  // g^{mu mu}
        return GaussRat{eta[static_cast<size_t>(mu)]} * a[static_cast<size_t>(mu)].pow(-2);
    }
    ScalarExpr sqrt_det() const {
        ScalarExpr out = ScalarExpr::one();
        for (const auto& s : a) out *= s;
        return out;
    }
    ScalarExpr dsigma(int mu) const {
        return ScalarExpr::atom(sigma, DerivIndex{}.raised(mu));
    }

    /// The same family conformally rescaled: a_mu -> scale * a_mu.
    MetricSpec rescaled(const ScalarExpr& scale) const {
        MetricSpec out = *this;
        for (auto& s : out.a) s = scale * s;
        return out;
    }
};

using CoordTable3 = std::array<std::array<std::array<ScalarExpr, 4>, 4>, 4>;

/// Christoffel symbols of the diagonal family by the Levi-Civita formula,
/// Gamma^mu_{nu alpha} = 1/2 g^{mu mu}(d_nu g_{mu alpha} + d_alpha g_{mu nu}
/// - d_mu g_{nu alpha}).
inline CoordTable3 christoffel(const MetricSpec& gm) {
    CoordTable3 out;
    for (int mu = 0; mu < 4; ++mu) {
        ScalarExpr half_inv = GaussRat{Rational(1, 2)} * gm.inv_metric(mu);
        for (int nu = 0; nu < 4; ++nu)
            for (int al = 0; al < 4; ++al) {
                ScalarExpr acc;
                if (al == mu) acc += partial(gm.metric(mu), nu);
                if (nu == mu) acc += partial(gm.metric(mu), al);
                if (nu == al) acc -= partial(gm.metric(nu), mu);
                out[static_cast<size_t>(mu)][static_cast<size_t>(nu)]
                   [static_cast<size_t>(al)] = half_inv * acc;
            }
    }
    return out;
}

/// nabla_al g_{mu nu}, identically zero for the Levi-Civita symbols.
inline ScalarExpr metric_compatibility_residual(const MetricSpec& gm, const CoordTable3& chr,
                                                int al, int mu, int nu) {
    ScalarExpr r = (mu == nu) ? partial(gm.metric(mu), al) : ScalarExpr::zero();
    r -= chr[static_cast<size_t>(mu)][static_cast<size_t>(al)][static_cast<size_t>(nu)] *
         gm.metric(mu);
    r -= chr[static_cast<size_t>(nu)][static_cast<size_t>(al)][static_cast<size_t>(mu)] *
         gm.metric(nu);
    return r;
}

/// Frame spin connection omega^a_{nu c} solving
/// d_nu e^a_kappa - e^a_delta Gamma^delta_{nu kappa} = -omega^a_{nu c} e^c_kappa
/// exactly (the diagonal vierbein is invertible entrywise).
inline CoordTable3 spin_connection(const MetricSpec& gm, const CoordTable3& chr) {
    CoordTable3 out;  // indices [a][nu][c]
    for (int a = 0; a < 4; ++a)
        for (int nu = 0; nu < 4; ++nu)
            for (int c = 0; c < 4; ++c) {
                ScalarExpr lhs;
                if (a == c) lhs += partial(gm.a[static_cast<size_t>(a)], nu);
                lhs -= gm.a[static_cast<size_t>(a)] *
                       chr[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                          [static_cast<size_t>(c)];
                out[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                   [static_cast<size_t>(c)] =
                    -(lhs * gm.a[static_cast<size_t>(c)].inverse());
            }
    return out;
}

/// phi^A_B of the torsion-free unitary connection: phi^4_b = e^nu_b
/// (d_nu sigma) e^sigma, phi^b_4 = -e^nu_c (d_nu sigma) e^sigma eta^{cb},
/// all other components zero.
struct DiscreteConnectionCoeffs {
    std::array<ScalarExpr, 4> phi4_b;  // phi^4_b
    std::array<ScalarExpr, 4> phib_4;  // phi^b_4
};

inline DiscreteConnectionCoeffs discrete_coeffs(const MetricSpec& gm) {
    DiscreteConnectionCoeffs out;
    ScalarExpr es = gm.exp_sigma();
    for (int b = 0; b < 4; ++b) {
        ScalarExpr base = gm.a[static_cast<size_t>(b)].inverse() * gm.dsigma(b) * es;
        out.phi4_b[static_cast<size_t>(b)] = base;
        out.phib_4[static_cast<size_t>(b)] = GaussRat{-gm.eta[static_cast<size_t>(b)]} * base;
    }
    return out;
}

/// Frame-indexed curvature components of the extended connection; indices
/// run over 0..4 with 4 the discrete direction. Only the blocks that can be
/// nonzero for this connection are computed; the last index pair is
/// antisymmetric by construction.
class CurvatureComponents {
public:
    CurvatureComponents() = default;

    ScalarExpr& at(int A, int B, int C, int D) {
        return r_[idx(A, B, C, D)];
    }
    const ScalarExpr& at(int A, int B, int C, int D) const { return r_[idx(A, B, C, D)]; }

    ScalarExpr ricci(int B, int D) const {
        ScalarExpr acc;
        for (int A = 0; A < 5; ++A) acc += at(A, B, A, D);
        return acc;
    }

private:
    static size_t idx(int A, int B, int C, int D) {
        return static_cast<size_t>(((A * 5 + B) * 5 + C) * 5 + D);
    }
    std::array<ScalarExpr, 625> r_;
};

/// Fills R^a_{bcd} from the spin connection and R^A_{B4d} from the discrete
/// coefficients; the remaining extended components vanish for this family.
inline CurvatureComponents extended_curvature(const MetricSpec& gm, const CoordTable3& spn,
                                              const DiscreteConnectionCoeffs& dc) {
    CurvatureComponents out;
    auto einv = [&](int c) { return gm.a[static_cast<size_t>(c)].inverse(); };

    // R^a_{bcd} = e^mu_c e^nu_d ( d_mu om^a_{nu b} - d_nu om^a_{mu b}
    //                           + om^a_{mu e} om^e_{nu b} - om^a_{nu e} om^e_{mu b} )
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int mu = c, nu = d;  // diagonal inverse vierbein
                    ScalarExpr acc =
                        partial(spn[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                                   [static_cast<size_t>(b)],
                                mu) -
                        partial(spn[static_cast<size_t>(a)][static_cast<size_t>(mu)]
                                   [static_cast<size_t>(b)],
                                nu);
                    for (int e = 0; e < 4; ++e)
                        acc += spn[static_cast<size_t>(a)][static_cast<size_t>(mu)]
                                  [static_cast<size_t>(e)] *
                                   spn[static_cast<size_t>(e)][static_cast<size_t>(nu)]
                                      [static_cast<size_t>(b)] -
                               spn[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                                  [static_cast<size_t>(e)] *
                                   spn[static_cast<size_t>(e)][static_cast<size_t>(mu)]
                                      [static_cast<size_t>(b)];
                    out.at(a, b, c, d) = einv(c) * einv(d) * acc;
                }

    // R^A_{B4d} = e^{-sigma} e^nu_d ( -d_nu phi^A_B + phi^A_E om^E_{nu B}
    //                                - om^A_{nu E} phi^E_B ), phi as in the
    // solved connection; the frame omega has no discrete legs.
    ScalarExpr es_inv = gm.exp_sigma().inverse();
    auto phi = [&](int A, int B) -> ScalarExpr {
        if (A == 4 && B < 4) return dc.phi4_b[static_cast<size_t>(B)];
        if (A < 4 && B == 4) return dc.phib_4[static_cast<size_t>(A)];
        return ScalarExpr::zero();
    };
    auto om = [&](int A, int nu, int B) -> ScalarExpr {
        if (A < 4 && B < 4)
            return spn[static_cast<size_t>(A)][static_cast<size_t>(nu)]
                      [static_cast<size_t>(B)];
        return ScalarExpr::zero();
    };
    for (int A = 0; A < 5; ++A)
        for (int B = 0; B < 5; ++B)
            for (int d = 0; d < 4; ++d) {
                int nu = d;
                ScalarExpr acc = -partial(phi(A, B), nu);
                for (int E = 0; E < 5; ++E)
                    acc += phi(A, E) * om(E, nu, B) - om(A, nu, E) * phi(E, B);
                ScalarExpr val = es_inv * einv(d) * acc;
                out.at(A, B, 4, d) = val;
                out.at(A, B, d, 4) = -val;
            }
    return out;
}

/// Scalar curvature of the four-dimensional block alone.
inline ScalarExpr scalar_curvature4(const MetricSpec& gm) {
    CoordTable3 chr = christoffel(gm);
    CoordTable3 spn = spin_connection(gm, chr);
    ScalarExpr R;
    for (int b = 0; b < 4; ++b) {
        ScalarExpr ric;  // R^(4)_{bb} = sum_a R^a_{bab}
        for (int a = 0; a < 4; ++a) {
            int mu = a, nu = b;
            ScalarExpr acc =
                partial(spn[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                           [static_cast<size_t>(b)],
                        mu) -
                partial(spn[static_cast<size_t>(a)][static_cast<size_t>(mu)]
                           [static_cast<size_t>(b)],
                        nu);
            for (int e = 0; e < 4; ++e)
                acc += spn[static_cast<size_t>(a)][static_cast<size_t>(mu)]
                          [static_cast<size_t>(e)] *
                           spn[static_cast<size_t>(e)][static_cast<size_t>(nu)]
                              [static_cast<size_t>(b)] -
                       spn[static_cast<size_t>(a)][static_cast<size_t>(nu)]
                          [static_cast<size_t>(e)] *
                           spn[static_cast<size_t>(e)][static_cast<size_t>(mu)]
                              [static_cast<size_t>(b)];
            ric += gm.a[static_cast<size_t>(a)].inverse() *
                   gm.a[static_cast<size_t>(b)].inverse() * acc;
        }
        R += GaussRat{gm.eta[static_cast<size_t>(b)]} * ric;
    }
    return R;
}

/// Five-dimensional scalar curvature from the extended component tables.
inline ScalarExpr scalar_curvature5(const MetricSpec& gm) {
    CoordTable3 chr = christoffel(gm);
    CoordTable3 spn = spin_connection(gm, chr);
    CurvatureComponents R = extended_curvature(gm, spn, discrete_coeffs(gm));
    ScalarExpr out;
    const int eta5[5] = {gm.eta[0], gm.eta[1], gm.eta[2], gm.eta[3], 1};
    for (int B = 0; B < 5; ++B) out += GaussRat{eta5[B]} * R.ricci(B, B);
    return out;
}

/// (box f, (df)^2) with the Levi-Civita connection:
/// box f = g^{mu nu} nabla_nu d_mu f and (df)^2 = g^{mu nu} d_mu f d_nu f.
inline std::pair<ScalarExpr, ScalarExpr> covariant_box_and_grad2(const MetricSpec& gm,
                                                                 const CoordTable3& chr,
                                                                 int field) {
    ScalarExpr box, grad2;
    for (int mu = 0; mu < 4; ++mu) {
        ScalarExpr df = ScalarExpr::atom(field, DerivIndex{}.raised(mu));
        ScalarExpr hess = ScalarExpr::atom(field, DerivIndex{}.raised(mu).raised(mu));
        for (int al = 0; al < 4; ++al)
            hess -= chr[static_cast<size_t>(al)][static_cast<size_t>(mu)]
                       [static_cast<size_t>(mu)] *
                    ScalarExpr::atom(field, DerivIndex{}.raised(al));
        box += gm.inv_metric(mu) * hess;
        grad2 += gm.inv_metric(mu) * (df * df);
    }
    return {box, grad2};
}

inline ScalarExpr covariant_box_plus_grad2(const MetricSpec& gm, const CoordTable3& chr,
                                           int field) {
    auto [box, grad2] = covariant_box_and_grad2(gm, chr, field);
    return box + grad2;
}

/// Residual of R5 = R4 - 2 g^{mu nu}[ nabla_nu d_mu sigma + d sigma d sigma ].
inline ScalarExpr r5_identity_residual(const MetricSpec& gm) {
    ScalarExpr lhs = scalar_curvature5(gm);
    ScalarExpr rhs = scalar_curvature4(gm) -
                     2 * covariant_box_plus_grad2(gm, christoffel(gm), gm.sigma);
    return lhs - rhs;
}

/// Residual of the conformal identity for g~ = e^{2 Phi} g in d = 4:
/// e^{2 Phi} R~ - R = -2(d-1) box(Phi) - (d-2)(d-1) (dPhi)^2, everything on
/// the right evaluated with the unrescaled metric. exp_phi is e^{Phi} as an
/// invertible monomial.
inline ScalarExpr conformal_rescale_residual(const MetricSpec& gm, int phi_field,
                                             const ScalarExpr& exp_phi, int dim = 4) {
    if (dim != 4) throw Error("conformal identity implemented for d = 4");
    ScalarExpr r_tilde = scalar_curvature4(gm.rescaled(exp_phi));
    ScalarExpr r = scalar_curvature4(gm);
    auto [box, grad2] = covariant_box_and_grad2(gm, christoffel(gm), phi_field);
    ScalarExpr rhs = GaussRat{-2 * (dim - 1)} * box +
                     GaussRat{-(dim - 2) * (dim - 1)} * grad2;
    return exp_phi.pow(2) * r_tilde - r - rhs;
}

struct DilatonAction {
    ScalarExpr before;  // sqrt|g| e^sigma R5
    ScalarExpr after;   // sqrt|g~| (R~ - coeff g~^{mu nu} d sigma d sigma), g~ = e^sigma g
};

/// The rescaled-frame action density at a given kinetic normalization.
inline ScalarExpr rescaled_action_density(const MetricSpec& gm, const GaussRat& kinetic_coeff) {
    MetricSpec tilde = gm.rescaled(gm.exp_half_sigma);
    ScalarExpr out = tilde.sqrt_det() * scalar_curvature4(tilde);
    ScalarExpr grad2;
    for (int mu = 0; mu < 4; ++mu)
        grad2 += tilde.inv_metric(mu) * (gm.dsigma(mu) * gm.dsigma(mu));
    return out - kinetic_coeff * (tilde.sqrt_det() * grad2);
}

inline DilatonAction dilaton_action(const MetricSpec& gm) {
    DilatonAction out;
    out.before = gm.sqrt_det() * gm.exp_sigma() * scalar_curvature5(gm);
    out.after = rescaled_action_density(gm, GaussRat{Rational(1, 2)});
    return out;
}

}  // namespace gradform
