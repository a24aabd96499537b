#pragma once

#include "gradform/expr.hpp"
#include "gradform/printer.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace gradform {

/// One letter of a noncommutative word: a matrix symbol, possibly
/// differentiated and/or daggered.
struct NcAtom {
    int sym = -1;
    DerivIndex deriv;
    bool dag = false;

    friend bool operator==(const NcAtom& a, const NcAtom& b) {
        return a.sym == b.sym && a.deriv == b.deriv && a.dag == b.dag;
    }
    friend bool operator<(const NcAtom& a, const NcAtom& b) {
        if (a.sym != b.sym) return a.sym < b.sym;
        if (!(a.deriv == b.deriv)) return a.deriv < b.deriv;
        return a.dag < b.dag;
    }
};

using NcWord = std::vector<NcAtom>;

struct NcTerm {
    ScalarExpr coeff;
    NcWord word;
};

constexpr int kRewriteStepCap = 10000;

/// Sum of scalar-coefficient words in declared matrix symbols. The empty
/// word is the identity, so plain scalars embed as single empty-word terms.
/// Normalization applies the declared rewrite rules leftmost-innermost to a
/// fixpoint: unitary contractions U U^dag = U^dag U = 1, dagger elimination
/// for skew-hermitian symbols, and dagger-of-derivative expansion for
/// unitary symbols (d(U^dag) = -U^dag dU U^dag and its prolongations).
class NcPoly {
public:
    NcPoly() = default;
    explicit NcPoly(ScalarExpr s) {
        if (!s.is_zero()) terms_.push_back({std::move(s), {}});
    }
    NcPoly(long v) : NcPoly(ScalarExpr(v)) {}

    static NcPoly zero() { return NcPoly{}; }
    static NcPoly one() { return NcPoly{ScalarExpr::one()}; }
    static NcPoly symbol(int sym, DerivIndex d = {}, bool dag = false) {
        const auto& info = symbol_info(sym);
        if (info.kind != SymbolKind::MatrixSym)
            throw Error("NcPoly::symbol expects a matrix symbol: " + info.name);
        NcPoly p;
        p.terms_.push_back({ScalarExpr::one(), {NcAtom{sym, d, dag}}});
        p.rewrite();
        return p;
    }

    const std::vector<NcTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_scalar() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].word.empty());
    }
    ScalarExpr scalar() const {
        if (terms_.empty()) return ScalarExpr::zero();
        if (!is_scalar()) throw Error("NcPoly: matrix-symbol words present");
        return terms_[0].coeff;
    }

    friend bool operator==(const NcPoly& a, const NcPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].word == b.terms_[i].word &&
                  a.terms_[i].coeff == b.terms_[i].coeff))
                return false;
        return true;
    }
    friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

    friend NcPoly operator+(const NcPoly& a, const NcPoly& b) {
        NcPoly out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        out.terms_.insert(out.terms_.end(), a.terms_.begin(), a.terms_.end());
        out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
        out.collect();
        return out;
    }
    friend NcPoly operator-(const NcPoly& a) {
        NcPoly out = a;
        for (auto& t : out.terms_) t.coeff = -t.coeff;
        return out;
    }
    friend NcPoly operator-(const NcPoly& a, const NcPoly& b) { return a + (-b); }
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
        NcPoly out;
        out.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                NcTerm t;
                t.coeff = ta.coeff * tb.coeff;
                t.word = ta.word;
                t.word.insert(t.word.end(), tb.word.begin(), tb.word.end());
                out.terms_.push_back(std::move(t));
            }
        out.rewrite();
        return out;
    }
    NcPoly& operator+=(const NcPoly& b) { return *this = *this + b; }
    NcPoly& operator-=(const NcPoly& b) { return *this = *this - b; }
    NcPoly& operator*=(const NcPoly& b) { return *this = *this * b; }

    friend NcPoly operator*(const ScalarExpr& s, const NcPoly& p) {
        NcPoly out = p;
        for (auto& t : out.terms_) t.coeff = s * t.coeff;
        out.collect();
        return out;
    }
    friend NcPoly operator*(const GaussRat& c, const NcPoly& p) {
        return ScalarExpr(c) * p;
    }

    NcPoly dagger() const {
        NcPoly out;
        for (const auto& t : terms_) {
            NcTerm r;
            r.coeff = conj(t.coeff);
            r.word.assign(t.word.rbegin(), t.word.rend());
            for (auto& a : r.word) a.dag = !a.dag;
            out.terms_.push_back(std::move(r));
        }
        out.rewrite();
        return out;
    }

    NcPoly partial(int mu) const {
        NcPoly out;
        for (const auto& t : terms_) {
            {
                NcTerm dc{gradform::partial(t.coeff, mu), t.word};
                if (!dc.coeff.is_zero()) out.terms_.push_back(std::move(dc));
            }
            for (size_t i = 0; i < t.word.size(); ++i) {
                if (!symbol_info(t.word[i].sym).depends_on(mu)) continue;
                NcTerm dt = t;
                dt.word[i].deriv = dt.word[i].deriv.raised(mu);
                out.terms_.push_back(std::move(dt));
            }
        }
        out.rewrite();
        return out;
    }

private:
    // (d_J U)^dag for a unitary symbol, |J| >= 1: prolongation of
    // d(U^dag) = -U^dag (dU) U^dag.
    static NcPoly unitary_dagger_deriv(int sym, const DerivIndex& J) {
        NcPoly ud;
        ud.terms_.push_back({ScalarExpr::one(), {NcAtom{sym, {}, true}}});
        if (J.len == 1) {
            NcPoly du;
            du.terms_.push_back({ScalarExpr::one(), {NcAtom{sym, J, false}}});
            return -(ud * du * ud);
        }
        DerivIndex head;
        for (uint8_t i = 0; i + 1 < J.len; ++i) head = head.raised(J.idx[i]);
        return unitary_dagger_deriv(sym, head).partial(J.idx[J.len - 1]);
    }

    // One leftmost-innermost rewrite of a term; true when something fired.
    static bool rewrite_term(const NcTerm& t, std::vector<NcTerm>& out) {
        for (size_t i = 0; i < t.word.size(); ++i) {
            const NcAtom& a = t.word[i];
            const auto& s = symbol_info(a.sym);
            if (a.dag && s.mkind == MatrixKind::SkewHermitian) {
                NcTerm r = t;
                r.word[i].dag = false;
                r.coeff = -r.coeff;
                out.push_back(std::move(r));
                return true;
            }
            if (a.dag && s.mkind == MatrixKind::Unitary && !a.deriv.empty()) {
                NcPoly expansion = unitary_dagger_deriv(a.sym, a.deriv);
                for (const auto& et : expansion.terms_) {
                    NcTerm r;
                    r.coeff = t.coeff * et.coeff;
                    r.word.assign(t.word.begin(), t.word.begin() + static_cast<long>(i));
                    r.word.insert(r.word.end(), et.word.begin(), et.word.end());
                    r.word.insert(r.word.end(), t.word.begin() + static_cast<long>(i) + 1,
                                  t.word.end());
                    out.push_back(std::move(r));
                }
                return true;
            }
            if (i + 1 < t.word.size() && s.mkind == MatrixKind::Unitary) {
                const NcAtom& b = t.word[i + 1];
                if (b.sym == a.sym && a.deriv.empty() && b.deriv.empty() && a.dag != b.dag) {
                    NcTerm r = t;
                    r.word.erase(r.word.begin() + static_cast<long>(i),
                                 r.word.begin() + static_cast<long>(i) + 2);
                    out.push_back(std::move(r));
                    return true;
                }
            }
        }
        return false;
    }

    void rewrite() {
        int steps = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<NcTerm> next;
            next.reserve(terms_.size());
            for (const auto& t : terms_) {
                if (rewrite_term(t, next)) {
                    changed = true;
                    if (++steps > kRewriteStepCap)
                        throw Error("rewrite step cap exceeded");
                } else {
                    next.push_back(t);
                }
            }
            terms_ = std::move(next);
        }
        collect();
    }

    void collect() {
        std::sort(terms_.begin(), terms_.end(), [](const NcTerm& a, const NcTerm& b) {
            if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
            return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(),
                                                b.word.end());
        });
        std::vector<NcTerm> merged;
        for (auto& t : terms_) {
            if (t.coeff.is_zero()) continue;
            if (!merged.empty() && merged.back().word == t.word)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
            if (!merged.empty() && merged.back().coeff.is_zero()) merged.pop_back();
        }
        terms_ = std::move(merged);
    }

    std::vector<NcTerm> terms_;
};

inline std::string to_string(const NcPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string body = "(" + to_string(t.coeff) + ")";
        for (const auto& a : t.word) {
            body += "." + symbol_info(a.sym).name;
            for (int i = 0; i < a.deriv.len; ++i)
                body += std::string(i ? "" : "_") + std::to_string(a.deriv.idx[i]);
            if (a.dag) body += "+";
        }
        out += (first ? "" : " ++ ") + body;
        first = false;
    }
    return out;
}

}  // namespace gradform
