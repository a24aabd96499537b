#pragma once

#include "gradform/expr.hpp"

#include <cctype>
#include <string>

namespace gradform {

struct ParseError : Error {
    size_t pos;
    ParseError(const std::string& msg, size_t at)
        : Error(msg + " at position " + std::to_string(at)), pos(at) {}
};

/// Recursive-descent parser for the expression grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := primary ('^' ['-'] digits)?
///   primary:= rational | 'i' | name | 'd'digits'(' expr ')'
///           | 'conj' '(' expr ')' | '(' expr ')'
/// Names must be declared symbols (coordinates x0..x3 are built in).
class ExprParser {
public:
    explicit ExprParser(std::string text) : text_(std::move(text)) {}

    ScalarExpr parse() {
        ScalarExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    ScalarExpr parse_expr() {
        skip_ws();
        bool neg = accept('-');
        ScalarExpr e = parse_term();
        if (neg) e = -e;
        while (true) {
            skip_ws();
            if (accept('+')) e += parse_term();
            else if (accept('-')) e -= parse_term();
            else break;
        }
        return e;
    }

    ScalarExpr parse_term() {
        ScalarExpr e = parse_factor();
        while (true) {
            skip_ws();
            if (accept('*')) e *= parse_factor();
            else break;
        }
        return e;
    }

    ScalarExpr parse_factor() {
        ScalarExpr base = parse_primary();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("exponent expected", at);
            long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                e = e * 10 + (text_[pos_++] - '0');
            return base.pow(static_cast<int>(neg ? -e : e));
        }
        return base;
    }

    ScalarExpr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
        if (c == '(') {
            ++pos_;
            ScalarExpr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        throw ParseError("expected a number, name or '('", pos_);
    }

    ScalarExpr parse_rational() {
        size_t start = pos_;
        std::string num;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            num += text_[pos_++];
        Rational r{BigInt(num)};
        if (pos_ < text_.size() && text_[pos_] == '/') {
            size_t save = pos_++;
            std::string den;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                den += text_[pos_++];
            if (den.empty()) {
                pos_ = save;  // not a fraction; leave '/' for the caller (an error)
                throw ParseError("malformed rational", start);
            }
            if (BigInt(den) == 0) throw ParseError("zero denominator", save + 1);
            r /= Rational{BigInt(den)};
        }
        return ScalarExpr{GaussRat{r}};
    }

    ScalarExpr parse_name() {
        size_t start = pos_;
        std::string name;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            name += text_[pos_++];
        if (name == "i") return ScalarExpr::imag_unit();
        if (name == "conj" && peek() == '(') {
            expect('(');
            ScalarExpr e = parse_expr();
            expect(')');
            return conj(e);
        }
        if (name.size() >= 2 && name[0] == 'd' && peek() == '(' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int mu = std::stoi(name.substr(1));
            if (mu < 0 || mu >= kCoordCount)
                throw ParseError("derivative index out of range", start);
            expect('(');
            ScalarExpr e = parse_expr();
            expect(')');
            return partial(e, mu);
        }
        auto id = SymbolTable::instance().find(name);
        if (!id) throw ParseError("unknown field '" + name + "'", start);
        return ScalarExpr::atom(*id);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        skip_ws();
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::string text_;
    size_t pos_ = 0;
};

inline ScalarExpr parse_expr(const std::string& text) { return ExprParser(text).parse(); }

}  // namespace gradform
