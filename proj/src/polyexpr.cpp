#include "rif/polyexpr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rif/error.hpp"

namespace rif {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    BiPoly run() {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
        BiPoly p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    BiPoly expr() {
        BiPoly acc;
        bool first = true;
        for (;;) {
            char c = peek();
            double sign = 1.0;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                break;
            }
            BiPoly t = term();
            acc = first && sign > 0 ? t : acc + t * cplx(sign);
            first = false;
        }
        return acc;
    }

    static bool starts_factor(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c));
    }

    BiPoly term() {
        BiPoly acc = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = mul(acc, factor());
            } else if (starts_factor(c)) {
                acc = mul(acc, factor());
            } else {
                return acc;
            }
        }
    }

    BiPoly mul(const BiPoly& a, const BiPoly& b) {
        const std::size_t at = pos_;
        try {
            return a * b;
        } catch (const DomainError&) {
            throw ParseError("degree exceeds cap of " + std::to_string(kMaxDegree), at);
        }
    }

    BiPoly factor() {
        BiPoly b = primary();
        while (peek() == '^') {
            ++pos_;
            skip();
            const std::size_t at = pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw ParseError("expected unsigned integer exponent", at);
            long e = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                e = e * 10 + (s_[pos_] - '0');
                if (e > kMaxDegree) throw ParseError("exponent overflow", at);
                ++pos_;
            }
            try {
                b = b.pow(int(e));
            } catch (const DomainError&) {
                throw ParseError("exponent overflow", at);
            }
        }
        return b;
    }

    BiPoly primary() {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            BiPoly e = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const double v = number();
            if (pos_ < s_.size() && s_[pos_] == 'i' &&
                !(pos_ + 1 < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) &&
                  s_[pos_ + 1] != 'z')) {
                ++pos_;
                return BiPoly::constant(cplx(0.0, v));
            }
            return BiPoly::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            if (c == 'z' && pos_ + 1 < s_.size() && (s_[pos_ + 1] == '1' || s_[pos_ + 1] == '2') &&
                !(pos_ + 2 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))) {
                const bool one = s_[pos_ + 1] == '1';
                pos_ += 2;
                return one ? BiPoly::monomial(1, 0) : BiPoly::monomial(0, 1);
            }
            if (c == 'i') {
                ++pos_;
                return BiPoly::constant(cplx(0.0, 1.0));
            }
            std::size_t end = pos_;
            while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
            throw ParseError("unknown identifier '" + std::string(s_.substr(pos_, end - pos_)) + "'", at);
        }
        if (c == '\0') throw ParseError("unexpected end of input", at);
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }

    double number() {
        const std::size_t start = pos_;
        auto digit = [&](std::size_t k) {
            return k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]));
        };
        bool any = false;
        while (digit(pos_)) ++pos_, any = true;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (digit(pos_)) ++pos_, any = true;
        }
        if (!any) throw ParseError("malformed number", start);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t k = pos_ + 1;
            if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
            if (digit(k)) {
                pos_ = k;
                while (digit(pos_)) ++pos_;
            }
        }
        const std::string tok(s_.substr(start, pos_ - start));
        const double v = std::strtod(tok.c_str(), nullptr);
        if (!std::isfinite(v)) throw ParseError("number out of range", start);
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string monomial_text(int i, int j) {
    std::string m;
    auto add = [&](const char* v, int e) {
        if (e == 0) return;
        if (!m.empty()) m += "*";
        m += v;
        if (e > 1) m += "^" + std::to_string(e);
    };
    add("z1", i);
    add("z2", j);
    return m;
}

}  // namespace

BiPoly parse_poly(std::string_view text) { return Parser(text).run(); }

std::string format_poly(const BiPoly& p) {
    std::string out;
    p.for_each_term([&](int i, int j, cplx c) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("cannot format non-finite coefficient");
        const std::string mono = monomial_text(i, j);
        std::string coef;
        bool negative = false;
        if (c.imag() == 0.0) {
            negative = std::signbit(c.real());
            const double a = std::abs(c.real());
            if (a != 1.0 || mono.empty()) coef = num(a);
        } else if (c.real() == 0.0) {
            negative = std::signbit(c.imag());
            coef = num(std::abs(c.imag())) + "i";
        } else {
            coef = "(" + num(c.real()) + (std::signbit(c.imag()) ? " - " : " + ") +
                   num(std::abs(c.imag())) + "i)";
        }
        std::string t = coef;
        if (!mono.empty()) t = coef.empty() ? mono : coef + "*" + mono;
        if (out.empty())
            out = negative ? "-" + t : t;
        else
            out += (negative ? " - " : " + ") + t;
    });
    return out.empty() ? "0" : out;
}

}  // namespace rif
