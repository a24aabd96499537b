#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gradform {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact element of Q(i): re + im*i with rational re, im.
struct GaussRat {
    Rational re{0};
    Rational im{0};

    GaussRat() = default;
    GaussRat(long v) : re(v) {}
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat zero() { return GaussRat{}; }
    static GaussRat one() { return GaussRat{1}; }
    static GaussRat imag_unit() { return GaussRat{Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussRat conj() const { return GaussRat{re, -im}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat{a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat{a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat{-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw Error("GaussRat: division by zero");
        return GaussRat{(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }

    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    GaussRat pow(int e) const {
        if (e < 0) return GaussRat::one() / pow(-e);
        GaussRat acc = GaussRat::one();
        GaussRat base = *this;
        for (int k = e; k > 0; k >>= 1) {
            if (k & 1) acc *= base;
            base *= base;
        }
        return acc;
    }
};

inline std::string to_string(const Rational& r) {
    return r.str();
}

/// Canonical text of a Gaussian rational as it appears inside a monomial
/// coefficient: "3", "-3/2", "i", "-i", "2*i", "(1+2*i)", "(1-2*i)".
inline std::string to_string(const GaussRat& c) {
    if (c.im == 0) return to_string(c.re);
    std::string imtxt;
    if (c.im == 1) imtxt = "i";
    else if (c.im == -1) imtxt = "-i";
    else imtxt = to_string(c.im) + "*i";
    if (c.re == 0) return imtxt;
    std::string out = "(" + to_string(c.re);
    if (imtxt[0] == '-') out += "-" + imtxt.substr(1);
    else out += "+" + imtxt;
    return out + ")";
}

}  // namespace gradform
