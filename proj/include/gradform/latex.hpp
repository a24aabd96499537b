#pragma once

#include "gradform/models.hpp"
#include "gradform/printer.hpp"

#include <string>

namespace gradform {

namespace latex_detail {

/// Names render as \mathrm{...} except a handful of conventional greek ones.
inline std::string name_tex(const std::string& name) {
    static const char* greek[] = {"phi",   "sigma", "theta", "alpha", "omega",
                                  "Phi",   "Sigma", "psi",   "chi",   "nu"};
    std::string base = name, sub;
    if (auto pos = name.find('_'); pos != std::string::npos) {
        base = name.substr(0, pos);
        sub = name.substr(pos + 1);
    }
    for (const char* g : greek)
        if (base == g) return "\\" + base + (sub.empty() ? "" : "_{" + sub + "}");
    return "\\mathrm{" + base + "}" + (sub.empty() ? "" : "_{" + sub + "}");
}

inline std::string coeff_tex(const GaussRat& c) {
    auto rat = [](const Rational& r) {
        BigInt num = boost::multiprecision::numerator(r);
        BigInt den = boost::multiprecision::denominator(r);
        if (den == 1) return num.str();
        std::string sign = num < 0 ? "-" : "";
        BigInt an = num < 0 ? BigInt(-num) : num;
        return sign + "\\tfrac{" + an.str() + "}{" + den.str() + "}";
    };
    if (c.im == 0) return rat(c.re);
    std::string im = (c.im == 1) ? "i" : (c.im == -1 ? "-i" : rat(c.im) + "i");
    if (c.re == 0) return im;
    return "(" + rat(c.re) + (im[0] == '-' ? im : "+" + im) + ")";
}

}  // namespace latex_detail

inline std::string latex(const ScalarExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        std::string body;
        GaussRat c = t.coeff;
        bool neg = false;
        if ((c.is_real() && c.re < 0) || (c.re == 0 && c.im < 0)) {
            neg = true;
            c = -c;
        }
        if (!(c == GaussRat::one()) || t.atoms.empty()) body += latex_detail::coeff_tex(c) + "\\,";
        for (const auto& a : t.atoms) {
            const auto& s = symbol_info(a.sym);
            std::string core;
            if (s.kind == SymbolKind::Coordinate) {
                core = "x^{" + std::to_string(a.sym) + "}";
            } else {
                core = latex_detail::name_tex(s.name);
            }
            for (int i = 0; i < a.deriv.len; ++i)
                core = "\\partial_{" + std::to_string(a.deriv.idx[i]) + "}" + core;
            if (a.conj) core = "\\overline{" + core + "}";
            if (a.exp != 1) core = "(" + core + ")^{" + std::to_string(a.exp) + "}";
            body += core + "\\,";
        }
        if (body.size() >= 2 && body.substr(body.size() - 2) == "\\,")
            body.resize(body.size() - 2);
        out += first ? (neg ? "-" + body : body) : (neg ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

inline std::string latex(const GradedForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : f.terms()) {
        std::string gens;
        for (uint8_t g : mono) {
            if (!gens.empty()) gens += "\\wedge ";
            gens += (g < f.algebra().m)
                        ? "\\mathrm{d}x^{" + std::to_string(g) + "}"
                        : "\\xi^{" + std::to_string(g - f.algebra().m + 1) + "}";
        }
        std::string coeff;
        if (f.algebra().n == 1 && c.at(0, 0).is_scalar()) {
            coeff = "\\left(" + latex(c.at(0, 0).scalar()) + "\\right)";
        } else {
            coeff = "\\begin{pmatrix}";
            for (int i = 0; i < c.n(); ++i) {
                for (int j = 0; j < c.n(); ++j) {
                    coeff += c.at(i, j).is_scalar() ? latex(c.at(i, j).scalar())
                                                    : std::string("\\cdot");
                    if (j + 1 < c.n()) coeff += " & ";
                }
                if (i + 1 < c.n()) coeff += " \\\\ ";
            }
            coeff += "\\end{pmatrix}";
        }
        out += (first ? "" : " + ") + coeff + (gens.empty() ? "" : "\\," + gens);
        first = false;
    }
    return out;
}

inline std::string latex(const DerivationReport& rep) {
    std::string out;
    out += "\\section*{Derivation: " + rep.name + "}\n";
    out += "\\begin{itemize}\n";
    for (const auto& c : rep.claims) {
        out += "\\item[" + std::string(c.pass ? "$\\checkmark$" : "$\\times$") + "] ";
        out += "\\textbf{" + c.id + "} --- " + c.description + ".\\\\\n";
        out += "expected: \\texttt{" + c.expected + "}; computed: \\texttt{" + c.computed +
               "}\n";
    }
    out += "\\end{itemize}\n";
    return out;
}

}  // namespace gradform
