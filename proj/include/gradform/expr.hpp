#pragma once

#include "gradform/rational.hpp"
#include "gradform/symbols.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gradform {

/// Sorted multi-index of partial derivatives (order <= kMaxJetOrder).
struct DerivIndex {
    uint8_t len = 0;
    std::array<uint8_t, kMaxJetOrder> idx{};

    DerivIndex() = default;
    DerivIndex(std::initializer_list<int> l) {
        for (int v : l) *this = raised(v);
    }

    DerivIndex raised(int mu) const {
        if (len >= kMaxJetOrder) throw Error("jet order cap exceeded");
        DerivIndex out = *this;
        out.idx[out.len++] = static_cast<uint8_t>(mu);
        std::sort(out.idx.begin(), out.idx.begin() + out.len);
        return out;
    }

    bool empty() const { return len == 0; }

    friend bool operator==(const DerivIndex& a, const DerivIndex& b) {
        if (a.len != b.len) return false;
        return std::equal(a.idx.begin(), a.idx.begin() + a.len, b.idx.begin());
    }
    friend bool operator<(const DerivIndex& a, const DerivIndex& b) {
        if (a.len != b.len) return a.len < b.len;
        return std::lexicographical_compare(a.idx.begin(), a.idx.begin() + a.len,
                                            b.idx.begin(), b.idx.begin() + b.len);
    }
};

/// One multiplicand of a monomial: symbol ^ exp, possibly differentiated
/// and/or conjugated. Negative exponents only for invertible symbols at
/// derivative order zero.
struct Atom {
    int sym = -1;
    DerivIndex deriv;
    bool conj = false;
    int exp = 1;

    std::tuple<int, DerivIndex, bool> key() const { return {sym, deriv, conj}; }

    friend bool operator==(const Atom& a, const Atom& b) {
        return a.sym == b.sym && a.deriv == b.deriv && a.conj == b.conj && a.exp == b.exp;
    }
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.sym != b.sym) return a.sym < b.sym;
        if (!(a.deriv == b.deriv)) return a.deriv < b.deriv;
        if (a.conj != b.conj) return a.conj < b.conj;
        return a.exp < b.exp;
    }
};

struct Monomial {
    GaussRat coeff;
    std::vector<Atom> atoms;  // sorted by key, no duplicate keys, no zero exps

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.atoms == b.atoms;  // key comparison ignores the coefficient
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        return a.atoms < b.atoms;
    }
};

/// Canonical element of the commutative differential ring: a normalized sum
/// of monomials over Q(i). The monomial order is lexicographic on the sorted
/// atom lists (symbol id, derivative multi-index, conjugation, exponent);
/// it is fixed and documented so equality is syntactic.
class ScalarExpr {
public:
    ScalarExpr() = default;
    ScalarExpr(long v) { if (v != 0) terms_.push_back({GaussRat{v}, {}}); }
    explicit ScalarExpr(GaussRat c) { if (!c.is_zero()) terms_.push_back({std::move(c), {}}); }

    static ScalarExpr zero() { return ScalarExpr{}; }
    static ScalarExpr one() { return ScalarExpr{1}; }
    static ScalarExpr imag_unit() { return ScalarExpr{GaussRat::imag_unit()}; }

    static ScalarExpr atom(int sym, DerivIndex d = {}, bool cj = false, int exp = 1) {
        validate_atom(sym, d, cj, exp);
        const auto& s = symbol_info(sym);
        for (uint8_t i = 0; i < d.len; ++i)
            if (!s.depends_on(d.idx[i])) return zero();  // derivative of an absent coordinate
        ScalarExpr e;
        if (exp != 0) e.terms_.push_back({GaussRat::one(), {Atom{sym, d, cj, exp}}});
        else e = one();
        return e;
    }
    static ScalarExpr symbol(const std::string& name) {
        auto id = SymbolTable::instance().find(name);
        if (!id) throw Error("unknown symbol: " + name);
        return atom(*id);
    }

    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// The constant value, when the expression has no symbol content.
    std::optional<GaussRat> as_constant() const {
        if (terms_.empty()) return GaussRat::zero();
        if (terms_.size() == 1 && terms_[0].atoms.empty()) return terms_[0].coeff;
        return std::nullopt;
    }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].atoms == b.terms_[i].atoms &&
                  a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
        std::vector<Monomial> merged;
        merged.reserve(a.terms_.size() + b.terms_.size());
        merged.insert(merged.end(), a.terms_.begin(), a.terms_.end());
        merged.insert(merged.end(), b.terms_.begin(), b.terms_.end());
        return from_terms(std::move(merged));
    }
    friend ScalarExpr operator-(const ScalarExpr& a) {
        ScalarExpr out = a;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        std::vector<Monomial> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) prod.push_back(mul_monomials(ta, tb));
        return from_terms(std::move(prod));
    }
    ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
    ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
    ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }

    friend ScalarExpr operator*(const GaussRat& c, const ScalarExpr& a) {
        if (c.is_zero()) return {};
        ScalarExpr out = a;
        for (auto& t : out.terms_) t.coeff *= c;
        return out;
    }

    /// True when the expression is a single monomial whose atoms are all
    /// invertible at derivative order zero (so it has an exact inverse).
    bool is_invertible_monomial() const {
        if (terms_.size() != 1 || terms_[0].coeff.is_zero()) return false;
        for (const auto& a : terms_[0].atoms) {
            const auto& s = symbol_info(a.sym);
            bool inv = (s.kind == SymbolKind::Invertible || s.kind == SymbolKind::ExpUnit);
            if (!inv || !a.deriv.empty()) return false;
        }
        return true;
    }

    ScalarExpr inverse() const {
        if (!is_invertible_monomial())
            throw Error("inverse requires an invertible monomial");
        Monomial m = terms_[0];
        m.coeff = GaussRat::one() / m.coeff;
        for (auto& a : m.atoms) a.exp = -a.exp;
        ScalarExpr out;
        out.terms_.push_back(std::move(m));
        return out;
    }

    ScalarExpr pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        ScalarExpr acc = one();
        ScalarExpr base = *this;
        for (int k = e; k > 0; k >>= 1) {
            if (k & 1) acc *= base;
            base *= base;
        }
        return acc;
    }

    static ScalarExpr from_terms(std::vector<Monomial> terms) {
        std::sort(terms.begin(), terms.end());
        ScalarExpr out;
        for (auto& t : terms) {
            if (t.coeff.is_zero()) continue;
            if (!out.terms_.empty() && out.terms_.back().atoms == t.atoms)
                out.terms_.back().coeff += t.coeff;
            else
                out.terms_.push_back(std::move(t));
            if (!out.terms_.empty() && out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
        }
        return out;
    }

    static Monomial mul_monomials(const Monomial& a, const Monomial& b) {
        Monomial out;
        out.coeff = a.coeff * b.coeff;
        out.atoms.reserve(a.atoms.size() + b.atoms.size());
        size_t i = 0, j = 0;
        while (i < a.atoms.size() && j < b.atoms.size()) {
            if (a.atoms[i].key() == b.atoms[j].key()) {
                Atom merged = a.atoms[i];
                merged.exp += b.atoms[j].exp;
                if (merged.exp != 0) out.atoms.push_back(merged);
                ++i, ++j;
            } else if (a.atoms[i].key() < b.atoms[j].key()) {
                out.atoms.push_back(a.atoms[i++]);
            } else {
                out.atoms.push_back(b.atoms[j++]);
            }
        }
        for (; i < a.atoms.size(); ++i) out.atoms.push_back(a.atoms[i]);
        for (; j < b.atoms.size(); ++j) out.atoms.push_back(b.atoms[j]);
        return out;
    }

    static void validate_atom(int sym, const DerivIndex& d, bool cj, int exp) {
        const auto& s = symbol_info(sym);
        if (s.kind == SymbolKind::MatrixSym)
            throw Error("matrix symbol in scalar expression: " + s.name);
        bool invertible = (s.kind == SymbolKind::Invertible || s.kind == SymbolKind::ExpUnit);
        if (exp < 0 && !(invertible && d.empty()))
            throw Error("negative power of non-invertible atom: " + s.name);
        if (cj && s.reality == Reality::Real)
            throw Error("conjugate flag on real symbol: " + s.name);
        if (cj && s.kind == SymbolKind::ExpUnit)
            throw Error("exp units encode conjugation through the exponent: " + s.name);
        if (!d.empty() && (s.kind == SymbolKind::Coordinate ? true : false)) {
            // derivatives of coordinates reduce to constants before atoms form
            throw Error("derivative atom of a coordinate");
        }
    }

private:
    std::vector<Monomial> terms_;
};

inline ScalarExpr operator*(long c, const ScalarExpr& a) { return GaussRat{c} * a; }

// --- differentiation ------------------------------------------------------

/// d/dx_mu of a single atom, as (prefactor expression not containing the
/// replaced power) -- used by the Leibniz loop below.
inline ScalarExpr partial_atom(const Atom& a, int mu) {
    const auto& s = symbol_info(a.sym);
    switch (s.kind) {
        case SymbolKind::Coordinate: {
            if (a.sym != mu) return ScalarExpr::zero();
            ScalarExpr lower = a.exp == 1 ? ScalarExpr::one()
                                          : ScalarExpr::atom(a.sym, {}, false, a.exp - 1);
            return GaussRat{a.exp} * lower;
        }
        case SymbolKind::Field:
        case SymbolKind::Invertible: {
            if (!s.depends_on(mu)) return ScalarExpr::zero();
            ScalarExpr lower = a.exp == 1 ? ScalarExpr::one()
                                          : ScalarExpr::atom(a.sym, a.deriv, a.conj, a.exp - 1);
            ScalarExpr raised = ScalarExpr::atom(a.sym, a.deriv.raised(mu), a.conj, 1);
            return GaussRat{a.exp} * (lower * raised);
        }
        case SymbolKind::ExpUnit: {
            if (!s.depends_on(mu)) return ScalarExpr::zero();
            GaussRat f = s.factor;
            if (s.reality == Reality::Complex) {
                // exp stored with sign; conjugation is a negative exponent
            }
            ScalarExpr self = ScalarExpr::atom(a.sym, {}, false, a.exp);
            ScalarExpr base_jet = ScalarExpr::atom(s.base, DerivIndex{}.raised(mu), false, 1);
            return GaussRat{a.exp} * f * (base_jet * self);
        }
        case SymbolKind::MatrixSym:
            throw Error("matrix symbol in scalar expression");
    }
    return ScalarExpr::zero();
}

inline ScalarExpr partial(const ScalarExpr& e, int mu) {
    if (mu < 0 || mu >= kCoordCount) throw Error("partial: coordinate index out of range");
    ScalarExpr out;
    for (const auto& t : e.terms()) {
        for (size_t i = 0; i < t.atoms.size(); ++i) {
            ScalarExpr d = partial_atom(t.atoms[i], mu);
            if (d.is_zero()) continue;
            Monomial rest;
            rest.coeff = t.coeff;
            for (size_t j = 0; j < t.atoms.size(); ++j)
                if (j != i) rest.atoms.push_back(t.atoms[j]);
            ScalarExpr restx;
            restx = ScalarExpr::from_terms({rest});
            out += restx * d;
        }
    }
    return out;
}

inline ScalarExpr partial(const ScalarExpr& e, const DerivIndex& d) {
    ScalarExpr out = e;
    for (uint8_t i = 0; i < d.len; ++i) out = partial(out, d.idx[i]);
    return out;
}

// --- conjugation ----------------------------------------------------------

inline ScalarExpr conj(const ScalarExpr& e) {
    std::vector<Monomial> out;
    out.reserve(e.terms().size());
    for (const auto& t : e.terms()) {
        Monomial m;
        m.coeff = t.coeff.conj();
        for (Atom a : t.atoms) {
            const auto& s = symbol_info(a.sym);
            if (s.kind == SymbolKind::ExpUnit) {
                if (s.reality == Reality::Complex) a.exp = -a.exp;  // conj(e^{i c f}) = e^{-i c f}
            } else if (s.reality == Reality::Complex) {
                a.conj = !a.conj;
            }
            m.atoms.push_back(a);
        }
        std::sort(m.atoms.begin(), m.atoms.end());
        out.push_back(std::move(m));
    }
    return ScalarExpr::from_terms(std::move(out));
}

// --- variational derivative ------------------------------------------------

/// Formal polynomial derivative with respect to the jet variable (field,
/// deriv, unbarred). For the order-zero slot this includes the chain rule
/// through exp units of the field.
inline ScalarExpr jet_partial(const ScalarExpr& e, int field, const DerivIndex& d) {
    ScalarExpr out;
    for (const auto& t : e.terms()) {
        for (size_t i = 0; i < t.atoms.size(); ++i) {
            const Atom& a = t.atoms[i];
            if (a.sym == field && a.deriv == d && !a.conj) {
                Monomial m;
                m.coeff = t.coeff * GaussRat{a.exp};
                for (size_t j = 0; j < t.atoms.size(); ++j) {
                    if (j == i) {
                        if (a.exp != 1) {
                            Atom lower = a;
                            lower.exp -= 1;
                            m.atoms.push_back(lower);
                        }
                    } else {
                        m.atoms.push_back(t.atoms[j]);
                    }
                }
                out += ScalarExpr::from_terms({m});
            } else if (d.empty() && symbol_info(a.sym).kind == SymbolKind::ExpUnit &&
                       symbol_info(a.sym).base == field) {
                Monomial m = t;  // unit stays in place: d/df exp(cf)^k = c k exp(cf)^k
                m.coeff = t.coeff * GaussRat{a.exp} * symbol_info(a.sym).factor;
                out += ScalarExpr::from_terms({m});
            }
        }
    }
    return out;
}

/// All derivative multi-indices of `field` occurring in `e` (plus the empty
/// one when exp units of the field occur).
inline std::vector<DerivIndex> jet_slots(const ScalarExpr& e, int field) {
    std::vector<DerivIndex> out;
    auto push = [&](const DerivIndex& d) {
        for (const auto& x : out)
            if (x == d) return;
        out.push_back(d);
    };
    for (const auto& t : e.terms())
        for (const auto& a : t.atoms) {
            if (a.sym == field && !a.conj) push(a.deriv);
            const auto& s = symbol_info(a.sym);
            if (s.kind == SymbolKind::ExpUnit && s.base == field) push({});
        }
    return out;
}

/// Euler operator: sum_J (-1)^|J| d_J ( dL / d(partial_J field) ).
/// Annihilates exactly the total divergences of the polynomial jet class.
inline ScalarExpr euler_derivative(const ScalarExpr& lagrangian, int field) {
    const auto& s = symbol_info(field);
    if (s.kind != SymbolKind::Field && s.kind != SymbolKind::Invertible)
        throw Error("euler_derivative: not a field: " + s.name);
    ScalarExpr out;
    for (const DerivIndex& d : jet_slots(lagrangian, field)) {
        ScalarExpr term = partial(jet_partial(lagrangian, field, d), d);
        if (d.len % 2 == 1) term = -term;
        out += term;
    }
    return out;
}

inline ScalarExpr euler_derivative(const ScalarExpr& lagrangian, const std::string& field) {
    auto id = SymbolTable::instance().find(field);
    if (!id) throw Error("unknown field: " + field);
    return euler_derivative(lagrangian, *id);
}

// --- substitution -----------------------------------------------------------

/// Replace a field by an expression; derivative atoms become derivatives of
/// the replacement. Exp units of the field are only substitutable when the
/// replacement is zero (unit collapses to 1).
inline ScalarExpr substitute_field(const ScalarExpr& e, int field, const ScalarExpr& repl) {
    ScalarExpr out;
    for (const auto& t : e.terms()) {
        ScalarExpr factor = ScalarExpr::one();
        Monomial kept;
        kept.coeff = t.coeff;
        for (const Atom& a : t.atoms) {
            const auto& s = symbol_info(a.sym);
            if (a.sym == field) {
                ScalarExpr r = partial(repl, a.deriv);
                if (a.conj) r = conj(r);
                if (a.exp < 0) r = r.inverse().pow(-a.exp);
                else r = r.pow(a.exp);
                factor *= r;
            } else if (s.kind == SymbolKind::ExpUnit && s.base == field) {
                if (!repl.is_zero())
                    throw Error("cannot substitute a nonzero value under an exp unit");
                // exp(c*0)^k = 1
            } else {
                kept.atoms.push_back(a);
            }
        }
        out += ScalarExpr::from_terms({kept}) * factor;
    }
    return out;
}

inline int max_jet_order(const ScalarExpr& e) {
    int out = 0;
    for (const auto& t : e.terms())
        for (const auto& a : t.atoms) out = std::max(out, static_cast<int>(a.deriv.len));
    return out;
}

}  // namespace gradform
