#pragma once

#include "gradform/calc.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gradform {

/// Square matrix of graded forms over one algebra instance. Multiplication
/// wedges entries in row-column order.
class FormMatrix {
public:
    FormMatrix() = default;
    FormMatrix(AlgebraSpec alg, int ns)
        : alg_(alg), ns_(ns), e_(static_cast<size_t>(ns * ns), GradedForm(alg)) {}

    static FormMatrix identity(AlgebraSpec alg, int ns) {
        FormMatrix m(alg, ns);
        for (int i = 0; i < ns; ++i) m.at(i, i) = GradedForm::unit(alg);
        return m;
    }

    int ns() const { return ns_; }
    const AlgebraSpec& algebra() const { return alg_; }
    GradedForm& at(int i, int j) { return e_[static_cast<size_t>(i * ns_ + j)]; }
    const GradedForm& at(int i, int j) const { return e_[static_cast<size_t>(i * ns_ + j)]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const FormMatrix& a, const FormMatrix& b) {
        return a.ns_ == b.ns_ && a.alg_ == b.alg_ && a.e_ == b.e_;
    }

    friend FormMatrix operator+(const FormMatrix& a, const FormMatrix& b) {
        check(a, b);
        FormMatrix out(a.alg_, a.ns_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
        return out;
    }
    friend FormMatrix operator-(const FormMatrix& a) {
        FormMatrix out(a.alg_, a.ns_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = -a.e_[i];
        return out;
    }
    friend FormMatrix operator-(const FormMatrix& a, const FormMatrix& b) { return a + (-b); }
    friend FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
        check(a, b);
        FormMatrix out(a.alg_, a.ns_);
        for (int i = 0; i < a.ns_; ++i)
            for (int j = 0; j < a.ns_; ++j) {
                GradedForm acc(a.alg_);
                for (int l = 0; l < a.ns_; ++l) acc += wedge(a.at(i, l), b.at(l, j));
                out.at(i, j) = std::move(acc);
            }
        return out;
    }

    /// Entrywise dagger plus matrix transpose.
    FormMatrix dagger_transpose() const {
        FormMatrix out(alg_, ns_);
        for (int i = 0; i < ns_; ++i)
            for (int j = 0; j < ns_; ++j) out.at(i, j) = dagger(at(j, i));
        return out;
    }

    GradedForm trace_form() const {
        GradedForm acc(alg_);
        for (int i = 0; i < ns_; ++i) acc += at(i, i);
        return acc;
    }

    FormMatrix map(const std::function<GradedForm(const GradedForm&)>& f) const {
        FormMatrix out(alg_, ns_);
        for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = f(e_[i]);
        return out;
    }

    static void check(const FormMatrix& a, const FormMatrix& b) {
        if (a.ns_ != b.ns_ || a.alg_ != b.alg_) throw Error("form matrix shape mismatch");
    }

private:
    AlgebraSpec alg_;
    int ns_ = 0;
    std::vector<GradedForm> e_;
};

/// Connection on a free module with named basis sections: nabla(s_i) =
/// -Omega^j_i (x) s_j, entries odd graded forms. Skew-hermiticity is an
/// enforced declaration, not an inference.
class ConnectionMatrix {
public:
    static ConnectionMatrix make(FormMatrix omega, bool declare_skew_hermitian = false) {
        for (int i = 0; i < omega.ns(); ++i)
            for (int j = 0; j < omega.ns(); ++j)
                for (const auto& [mono, c] : omega.at(i, j).terms())
                    if (mono.size() % 2 != 1)
                        throw Error("connection entries must be odd forms");
        if (declare_skew_hermitian) {
            FormMatrix residual = omega.dagger_transpose() + omega;
            if (!residual.is_zero())
                throw Error("connection declared skew-hermitian but is not");
        }
        ConnectionMatrix c;
        c.omega_ = std::move(omega);
        c.skew_ = declare_skew_hermitian;
        return c;
    }

    static ConnectionMatrix zero(AlgebraSpec alg, int ns) {
        return make(FormMatrix(alg, ns));
    }

    const FormMatrix& matrix() const { return omega_; }
    int ns() const { return omega_.ns(); }
    bool skew_hermitian_declared() const { return skew_; }

private:
    FormMatrix omega_;
    bool skew_ = false;
};

/// Entrywise delta of a form matrix.
inline FormMatrix delta(const CertifiedDifferential& d, const FormMatrix& m) {
    FormMatrix out(m.algebra(), m.ns());
    for (int i = 0; i < m.ns(); ++i)
        for (int j = 0; j < m.ns(); ++j) out.at(i, j) = delta(d, m.at(i, j));
    return out;
}

inline FormMatrix extended_d(const CertifiedDifferential& d, const FormMatrix& m) {
    FormMatrix out(m.algebra(), m.ns());
    for (int i = 0; i < m.ns(); ++i)
        for (int j = 0; j < m.ns(); ++j) out.at(i, j) = extended_d(d, m.at(i, j));
    return out;
}

/// Curvature F = delta(Omega) + Omega ^ Omega; entries come out even.
inline FormMatrix curvature(const ConnectionMatrix& conn, const CertifiedDifferential& d) {
    const FormMatrix& om = conn.matrix();
    return delta(d, om) + om * om;
}

/// Basis change s'_i = g^j_i s_j: Omega' = -(d~ g) g^{-1} + g Omega g^{-1}.
/// The inverse is supplied by the caller (from unitarity rules or exactly);
/// it is validated against g.
inline FormMatrix gauge_transform(const ConnectionMatrix& conn, const FormMatrix& g,
                                  const FormMatrix& ginv, const CertifiedDifferential& d) {
    if (!(g * ginv == FormMatrix::identity(g.algebra(), g.ns())))
        throw Error("gauge transform: missing or incorrect inverse");
    return -(extended_d(d, g) * ginv) + g * conn.matrix() * ginv;
}

/// curvature(Omega') - g F g^{-1}, normalized; zero exactly when the field
/// strength transforms covariantly.
inline FormMatrix curvature_covariance_residual(const ConnectionMatrix& conn,
                                                const FormMatrix& g, const FormMatrix& ginv,
                                                const CertifiedDifferential& d) {
    FormMatrix transformed = gauge_transform(conn, g, ginv, d);
    FormMatrix f_prime = curvature(ConnectionMatrix::make(transformed), d);
    FormMatrix f = curvature(conn, d);
    return f_prime - g * f * ginv;
}

/// T^A = delta(E^A) + Omega^A_B ^ E^B for a form-valued basis.
inline std::vector<GradedForm> torsion(const ConnectionMatrix& conn,
                                       const std::vector<GradedForm>& basis,
                                       const CertifiedDifferential& d) {
    if (static_cast<int>(basis.size()) != conn.matrix().ns())
        throw Error("torsion: basis size mismatch");
    std::vector<GradedForm> out;
    for (int A = 0; A < conn.matrix().ns(); ++A) {
        GradedForm t = delta(d, basis[static_cast<size_t>(A)]);
        for (int B = 0; B < conn.matrix().ns(); ++B)
            t += wedge(conn.matrix().at(A, B), basis[static_cast<size_t>(B)]);
        out.push_back(std::move(t));
    }
    return out;
}

/// Omega^A_C eta^{CB} + Omega^B_D eta^{AD} for a diagonal frame metric;
/// identically zero exactly for a unitary (metric) connection.
inline FormMatrix unitarity_residual(const ConnectionMatrix& conn,
                                     const std::vector<int>& eta) {
    const FormMatrix& om = conn.matrix();
    if (static_cast<int>(eta.size()) != om.ns())
        throw Error("unitarity: eta size mismatch");
    FormMatrix out(om.algebra(), om.ns());
    for (int A = 0; A < om.ns(); ++A)
        for (int B = 0; B < om.ns(); ++B)
            out.at(A, B) = GaussRat{eta[static_cast<size_t>(B)]} * om.at(A, B) +
                           GaussRat{eta[static_cast<size_t>(A)]} * om.at(B, A);
    return out;
}

}  // namespace gradform
