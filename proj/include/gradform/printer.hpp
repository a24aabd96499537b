#pragma once

#include "gradform/expr.hpp"

#include <string>

namespace gradform {

inline std::string atom_text(const Atom& a) {
    const auto& s = symbol_info(a.sym);
    std::string core = s.name;
    for (int i = a.deriv.len - 1; i >= 0; --i)
        core = "d" + std::to_string(a.deriv.idx[i]) + "(" + core + ")";
    if (a.conj) core = "conj(" + core + ")";
    if (a.exp != 1) core += "^" + std::to_string(a.exp);
    return core;
}

/// Canonical text form; parsing it back yields the identical expression.
inline std::string to_string(const ScalarExpr& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : e.terms()) {
        std::string body;
        GaussRat c = t.coeff;
        bool neg = false;
        if (c.is_real() || c.re == 0) {
            // pure real or pure imaginary: pull the sign out
            if ((c.is_real() && c.re < 0) || (!c.is_real() && c.im < 0)) {
                neg = true;
                c = -c;
            }
        }
        bool unit_coeff = (c == GaussRat::one());
        if (!unit_coeff || t.atoms.empty()) body += to_string(c);
        for (const auto& a : t.atoms) {
            if (!body.empty()) body += "*";
            body += atom_text(a);
        }
        if (first) {
            out += (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

}  // namespace gradform
