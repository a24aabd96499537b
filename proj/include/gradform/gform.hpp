#pragma once

#include "gradform/ncpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gradform {

/// One algebra instance: m coordinate generators dx^0..dx^{m-1}, k Grassmann
/// generators xi^{m}..xi^{m+k-1}, and n x n matrix coefficients. All m+k
/// generators anticommute uniformly.
struct AlgebraSpec {
    int m = 4;
    int k = 1;
    int n = 1;

    int gens() const { return m + k; }
    bool is_xi(int g) const { return g >= m; }
    friend bool operator==(const AlgebraSpec& a, const AlgebraSpec& b) {
        return a.m == b.m && a.k == b.k && a.n == b.n;
    }
    friend bool operator!=(const AlgebraSpec& a, const AlgebraSpec& b) { return !(a == b); }
};

inline std::string generator_name(const AlgebraSpec& alg, int g) {
    if (g < alg.m) return "dx" + std::to_string(g);
    return "xi" + std::to_string(g - alg.m + 1);
}

/// Square matrix of noncommutative-word entries; the coefficient object of a
/// graded-form term.
class CoeffMatrix {
public:
    CoeffMatrix() = default;
    explicit CoeffMatrix(int n) : n_(n), e_(static_cast<size_t>(n * n)) {}

    static CoeffMatrix identity(int n) {
        CoeffMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = NcPoly::one();
        return m;
    }
    static CoeffMatrix scalar(int n, const ScalarExpr& s) {
        CoeffMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = NcPoly(s);
        return m;
    }

    int n() const { return n_; }
    NcPoly& at(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }
    const NcPoly& at(int i, int j) const { return e_[static_cast<size_t>(i * n_ + j)]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

    friend CoeffMatrix operator+(const CoeffMatrix& a, const CoeffMatrix& b) {
        check(a, b);
        CoeffMatrix out(a.n_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = a.e_[i] + b.e_[i];
        return out;
    }
    friend CoeffMatrix operator-(const CoeffMatrix& a) {
        CoeffMatrix out(a.n_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = -a.e_[i];
        return out;
    }
    friend CoeffMatrix operator-(const CoeffMatrix& a, const CoeffMatrix& b) {
        return a + (-b);
    }
    friend CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b) {
        check(a, b);
        CoeffMatrix out(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                NcPoly acc;
                for (int l = 0; l < a.n_; ++l) acc += a.at(i, l) * b.at(l, j);
                out.at(i, j) = std::move(acc);
            }
        return out;
    }
    friend CoeffMatrix operator*(const NcPoly& s, const CoeffMatrix& a) {
        CoeffMatrix out(a.n_);
        for (size_t i = 0; i < a.e_.size(); ++i) out.e_[i] = s * a.e_[i];
        return out;
    }
    friend CoeffMatrix operator*(const ScalarExpr& s, const CoeffMatrix& a) {
        return NcPoly(s) * a;
    }
    friend CoeffMatrix operator*(const GaussRat& c, const CoeffMatrix& a) {
        return NcPoly(ScalarExpr(c)) * a;
    }

    /// Conjugate transpose; entries get the word-level dagger.
    CoeffMatrix dagger() const {
        CoeffMatrix out(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) out.at(i, j) = at(j, i).dagger();
        return out;
    }

    CoeffMatrix partial(int mu) const {
        CoeffMatrix out(n_);
        for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i].partial(mu);
        return out;
    }

    NcPoly trace() const {
        NcPoly acc;
        for (int i = 0; i < n_; ++i) acc += at(i, i);
        return acc;
    }

private:
    static void check(const CoeffMatrix& a, const CoeffMatrix& b) {
        if (a.n_ != b.n_) throw Error("coefficient matrix size mismatch");
    }
    int n_ = 0;
    std::vector<NcPoly> e_;
};

/// Strictly increasing list of generator indices.
using GenMono = std::vector<uint8_t>;

/// Parity of the permutation sorting the concatenation of two sorted
/// monomials: the Koszul sign of the merge.
inline int merge_sign(const GenMono& a, const GenMono& b) {
    int inversions = 0;
    for (uint8_t x : a)
        for (uint8_t y : b)
            if (x > y) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

/// Canonical multivector of the extended graded algebra: a normalized map
/// from ordered generator monomials to matrix coefficients. Coefficients sit
/// to the left of the generators; they are degree zero, so the grading and
/// all Koszul signs live entirely in the monomials.
class GradedForm {
public:
    GradedForm() = default;
    explicit GradedForm(AlgebraSpec alg) : alg_(alg) {}

    static GradedForm zero(AlgebraSpec alg) { return GradedForm(alg); }
    static GradedForm unit(AlgebraSpec alg) {
        return term(alg, {}, CoeffMatrix::identity(alg.n));
    }
    static GradedForm scalar(AlgebraSpec alg, const ScalarExpr& s) {
        return term(alg, {}, CoeffMatrix::scalar(alg.n, s));
    }
    /// dx^g (g < m) or xi^{g-m+1} (g >= m), unit coefficient.
    static GradedForm generator(AlgebraSpec alg, int g) {
        if (g < 0 || g >= alg.gens()) throw Error("generator index out of range");
        return term(alg, {static_cast<uint8_t>(g)}, CoeffMatrix::identity(alg.n));
    }
    static GradedForm term(AlgebraSpec alg, GenMono mono, CoeffMatrix coeff) {
        if (coeff.n() != alg.n) throw Error("coefficient size does not match algebra");
        for (size_t i = 0; i + 1 < mono.size(); ++i)
            if (mono[i] >= mono[i + 1]) throw Error("monomial indices must strictly increase");
        if (!mono.empty() && mono.back() >= alg.gens())
            throw Error("generator index out of range");
        GradedForm f(alg);
        if (!coeff.is_zero()) f.terms_.emplace(std::move(mono), std::move(coeff));
        return f;
    }

    const AlgebraSpec& algebra() const { return alg_; }
    const std::map<GenMono, CoeffMatrix>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    const CoeffMatrix* coeff(const GenMono& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// Defined only when every term has the same degree; the zero form is
    /// homogeneous of every degree.
    std::optional<int> homogeneous_degree() const {
        std::optional<int> deg;
        for (const auto& [mono, c] : terms_) {
            int d = static_cast<int>(mono.size());
            if (deg && *deg != d) return std::nullopt;
            deg = d;
        }
        return deg ? deg : std::optional<int>(0);
    }

    friend bool operator==(const GradedForm& a, const GradedForm& b) {
        return a.alg_ == b.alg_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedForm& a, const GradedForm& b) { return !(a == b); }

    friend GradedForm operator+(const GradedForm& a, const GradedForm& b) {
        check(a, b);
        GradedForm out = a;
        for (const auto& [mono, c] : b.terms_) out.accumulate(mono, c);
        return out;
    }
    friend GradedForm operator-(const GradedForm& a) {
        GradedForm out = a;
        for (auto& [mono, c] : out.terms_) c = -c;
        return out;
    }
    friend GradedForm operator-(const GradedForm& a, const GradedForm& b) { return a + (-b); }
    GradedForm& operator+=(const GradedForm& b) { return *this = *this + b; }
    GradedForm& operator-=(const GradedForm& b) { return *this = *this - b; }

    friend GradedForm operator*(const ScalarExpr& s, const GradedForm& a) {
        GradedForm out = a;
        std::map<GenMono, CoeffMatrix> scaled;
        for (auto& [mono, c] : out.terms_) {
            CoeffMatrix sc = s * c;
            if (!sc.is_zero()) scaled.emplace(mono, std::move(sc));
        }
        out.terms_ = std::move(scaled);
        return out;
    }
    friend GradedForm operator*(const GaussRat& c, const GradedForm& a) {
        return ScalarExpr(c) * a;
    }

    void accumulate(const GenMono& mono, const CoeffMatrix& c) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_.emplace(mono, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    static void check(const GradedForm& a, const GradedForm& b) {
        if (a.alg_ != b.alg_) throw Error("graded forms from different algebras");
    }

private:
    AlgebraSpec alg_;
    std::map<GenMono, CoeffMatrix> terms_;
};

/// Graded product. Coefficients multiply in order (they are matrices and may
/// be noncommutative); generator monomials concatenate and sort, the Koszul
/// sign is the parity of the merge permutation; repeated generators kill the
/// term.
inline GradedForm wedge(const GradedForm& a, const GradedForm& b) {
    GradedForm::check(a, b);
    GradedForm out(a.algebra());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            bool repeated = false;
            {
                size_t i = 0, j = 0;
                while (i < ma.size() && j < mb.size()) {
                    if (ma[i] == mb[j]) {
                        repeated = true;
                        break;
                    }
                    (ma[i] < mb[j]) ? ++i : ++j;
                }
            }
            if (repeated) continue;
            GenMono mono;
            mono.reserve(ma.size() + mb.size());
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(mono));
            CoeffMatrix c = ca * cb;
            if (merge_sign(ma, mb) < 0) c = -c;
            out.accumulate(mono, c);
        }
    }
    return out;
}

/// The grading involution: each term scaled by (-1)^degree.
inline GradedForm involution(const GradedForm& a) {
    GradedForm out(a.algebra());
    for (const auto& [mono, c] : a.terms())
        out.accumulate(mono, mono.size() % 2 == 0 ? c : -c);
    return out;
}

/// Coefficient-wise adjoint; monomials are untouched.
inline GradedForm dagger(const GradedForm& a) {
    GradedForm out(a.algebra());
    for (const auto& [mono, c] : a.terms()) out.accumulate(mono, c.dagger());
    return out;
}

inline GradedForm grade_project(const GradedForm& a, int degree) {
    GradedForm out(a.algebra());
    for (const auto& [mono, c] : a.terms())
        if (static_cast<int>(mono.size()) == degree) out.accumulate(mono, c);
    return out;
}

/// Exterior derivative: d(c mono) = sum_nu (d_nu c) dx^nu ^ mono.
inline GradedForm exterior_d(const GradedForm& a) {
    GradedForm out(a.algebra());
    for (const auto& [mono, c] : a.terms()) {
        for (int nu = 0; nu < a.algebra().m; ++nu) {
            CoeffMatrix dc = c.partial(nu);
            if (dc.is_zero()) continue;
            bool repeated = false;
            int pos = 0;
            for (uint8_t g : mono) {
                if (g == nu) {
                    repeated = true;
                    break;
                }
                if (g < nu) ++pos;
            }
            if (repeated) continue;
            GenMono mono2 = mono;
            mono2.insert(mono2.begin() + pos, static_cast<uint8_t>(nu));
            out.accumulate(mono2, pos % 2 == 0 ? dc : -dc);
        }
    }
    return out;
}

/// Matrix trace per term: an n=1 form over the same generators.
inline GradedForm trace(const GradedForm& a) {
    AlgebraSpec alg = a.algebra();
    alg.n = 1;
    GradedForm out(alg);
    for (const auto& [mono, c] : a.terms()) {
        CoeffMatrix t(1);
        t.at(0, 0) = c.trace();
        out.accumulate(mono, t);
    }
    return out;
}

inline std::string to_string(const GradedForm& a) {
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : a.terms()) {
        std::string name;
        for (uint8_t g : mono) name += (name.empty() ? "" : "^") + generator_name(a.algebra(), g);
        if (name.empty()) name = "1";
        std::string ctext;
        if (a.algebra().n == 1) {
            ctext = to_string(c.at(0, 0));
        } else {
            ctext = "[";
            for (int i = 0; i < c.n(); ++i) {
                ctext += i ? "; " : "";
                for (int j = 0; j < c.n(); ++j)
                    ctext += (j ? ", " : "") + to_string(c.at(i, j));
            }
            ctext += "]";
        }
        out += (first ? "" : " + ") + ("(" + ctext + ") " + name);
        first = false;
    }
    return out;
}

}  // namespace gradform
