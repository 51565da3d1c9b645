// Copyright 2026 The qtmhalt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtmhalt/amplitude.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

#include <mpfr.h>

namespace qtmhalt {

namespace {

std::size_t hash_rational(const Rational &q) {
    const mpz_srcptr num = q.get_num_mpz_t();
    const mpz_srcptr den = q.get_den_mpz_t();
    std::size_t h = std::hash<unsigned long>{}(mpz_get_ui(num));
    h ^= std::hash<unsigned long>{}(mpz_get_ui(den)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(mpz_sgn(num) + 1);
}

// Appends one signed term `coef * factor` to `out`; factor may be empty.
void append_term(std::string &out, const Rational &coef, const char *factor) {
    if (sgn(coef) == 0) {
        return;
    }
    bool negative = sgn(coef) < 0;
    Rational mag = abs(coef);
    if (out.empty()) {
        if (negative) {
            out += "-";
        }
    } else {
        out += negative ? " - " : " + ";
    }
    if (*factor == '\0') {
        out += mag.get_str();
    } else if (mag == 1) {
        out += factor;
    } else {
        out += mag.get_str();
        out += "*";
        out += factor;
    }
}

}  // namespace

RealValue::RealValue(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
}

int RealValue::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sa == 0) {
        return sb;
    }
    if (sb == 0 || sa == sb) {
        return sa;
    }
    // Opposite signs: whichever of a^2 and 2b^2 dominates decides.
    Rational a2 = a_ * a_;
    Rational b2 = 2 * b_ * b_;
    return a2 > b2 ? sa : sb;
}

RealValue RealValue::operator-() const {
    RealValue r;
    r.a_ = -a_;
    r.b_ = -b_;
    return r;
}

RealValue RealValue::operator+(const RealValue &o) const {
    RealValue r;
    r.a_ = a_ + o.a_;
    r.b_ = b_ + o.b_;
    return r;
}

RealValue RealValue::operator-(const RealValue &o) const {
    RealValue r;
    r.a_ = a_ - o.a_;
    r.b_ = b_ - o.b_;
    return r;
}

RealValue RealValue::operator*(const RealValue &o) const {
    RealValue r;
    r.a_ = a_ * o.a_ + 2 * b_ * o.b_;
    r.b_ = a_ * o.b_ + b_ * o.a_;
    return r;
}

RealValue RealValue::operator/(const RealValue &o) const {
    if (o.is_zero()) {
        throw std::domain_error("division by zero");
    }
    // x / (c + d sqrt2) = x (c - d sqrt2) / (c^2 - 2 d^2); the denominator is
    // nonzero because sqrt2 is irrational.
    Rational den = o.a_ * o.a_ - 2 * o.b_ * o.b_;
    RealValue num = *this * RealValue(o.a_, -o.b_);
    RealValue r;
    r.a_ = num.a_ / den;
    r.b_ = num.b_ / den;
    return r;
}

RealValue &RealValue::operator+=(const RealValue &o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

RealValue &RealValue::operator-=(const RealValue &o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

RealValue &RealValue::operator*=(const RealValue &o) {
    *this = *this * o;
    return *this;
}

double RealValue::to_double() const {
    mpfr_t x, s;
    mpfr_init2(x, 256);
    mpfr_init2(s, 256);
    mpfr_set_q(x, a_.get_mpq_t(), MPFR_RNDN);
    mpfr_sqrt_ui(s, 2, MPFR_RNDN);
    mpfr_mul_q(s, s, b_.get_mpq_t(), MPFR_RNDN);
    mpfr_add(x, x, s, MPFR_RNDN);
    double v = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(s);
    if (std::isinf(v)) {
        throw std::overflow_error("value exceeds double range: " + str());
    }
    return v;
}

std::string RealValue::str() const { return Amplitude(*this).str(); }

Amplitude::Amplitude(Rational a, Rational b, Rational c, Rational d)
    : re_(std::move(a), std::move(b)), im_(std::move(c), std::move(d)) {}

Amplitude Amplitude::inv_sqrt2() { return {0, Rational(1, 2), 0, 0}; }
Amplitude Amplitude::sqrt2() { return {0, 1, 0, 0}; }
Amplitude Amplitude::imag_unit() { return {RealValue(), RealValue(1)}; }

bool Amplitude::is_one() const { return a() == 1 && sgn(b()) == 0 && im_.is_zero(); }

Amplitude Amplitude::operator*(const Amplitude &o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
}

Amplitude Amplitude::operator/(const Amplitude &o) const {
    RealValue n = norm_sq(o);
    if (n.is_zero()) {
        throw std::domain_error("division by zero");
    }
    Amplitude p = *this * o.conj();
    return {p.re_ / n, p.im_ / n};
}

Amplitude &Amplitude::operator+=(const Amplitude &o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

Amplitude &Amplitude::operator-=(const Amplitude &o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

Amplitude &Amplitude::operator*=(const Amplitude &o) {
    *this = *this * o;
    return *this;
}

std::string Amplitude::str() const {
    std::string out;
    append_term(out, a(), "");
    append_term(out, b(), "sqrt2");
    append_term(out, c(), "i");
    append_term(out, d(), "sqrt2*i");
    return out.empty() ? "0" : out;
}

std::size_t Amplitude::hash() const {
    std::size_t h = hash_rational(a());
    for (const Rational *q : {&b(), &c(), &d()}) {
        h = h * 1000003u ^ hash_rational(*q);
    }
    return h;
}

Amplitude amp_arith(ArithKind kind, const Amplitude &x, const Amplitude *y) {
    bool binary = kind == ArithKind::add || kind == ArithKind::sub || kind == ArithKind::mul;
    if (binary != (y != nullptr)) {
        throw std::invalid_argument("amp_arith: operand count does not match operation");
    }
    switch (kind) {
        case ArithKind::add:
            return x + *y;
        case ArithKind::sub:
            return x - *y;
        case ArithKind::mul:
            return x * *y;
        case ArithKind::neg:
            return -x;
        case ArithKind::conj:
            return x.conj();
    }
    throw std::invalid_argument("amp_arith: unknown operation");
}

RealValue norm_sq(const Amplitude &x) { return x.re() * x.re() + x.im() * x.im(); }

AmplitudeParseError::AmplitudeParseError(const std::string &msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

class AmplitudeParser {
   public:
    explicit AmplitudeParser(std::string_view text) : text_(text) {}

    Amplitude parse() {
        skip_ws();
        if (at_end()) {
            fail("empty amplitude");
        }
        Amplitude total = term();
        while (true) {
            skip_ws();
            if (at_end()) {
                break;
            }
            char op = text_[pos_];
            if (op != '+' && op != '-') {
                fail(std::string("unexpected character '") + op + "'");
            }
            ++pos_;
            Amplitude t = term();
            total = op == '+' ? total + t : total - t;
        }
        return total;
    }

   private:
    [[noreturn]] void fail(const std::string &msg) const { throw AmplitudeParseError(msg, pos_); }

    bool at_end() const { return pos_ >= text_.size(); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool consume(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    Amplitude term() {
        skip_ws();
        bool negative = false;
        if (!at_end() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
            skip_ws();
        }
        Amplitude value;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = rational();
        } else {
            value = factor();
        }
        while (consume("*")) {
            value *= factor();
        }
        return negative ? -value : value;
    }

    Amplitude factor() {
        skip_ws();
        if (consume("sqrt2")) {
            return Amplitude::sqrt2();
        }
        if (consume("sqrt")) {
            fail("only sqrt2 is representable");
        }
        if (!at_end() && text_[pos_] == 'i' &&
            (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
            ++pos_;
            return Amplitude::imag_unit();
        }
        fail("expected 'sqrt2', 'i' or a rational");
    }

    std::string integer() {
        skip_ws();
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Amplitude rational() {
        mpz_class num(integer());
        if (!consume("/")) {
            return {Rational(num), 0, 0, 0};
        }
        if (consume("sqrt2")) {
            // n / sqrt2 = (n/2) sqrt2
            return {0, Rational(num, 2), 0, 0};
        }
        std::size_t den_pos = pos_;
        mpz_class den(integer());
        if (den == 0) {
            pos_ = den_pos;
            fail("zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        return {q, 0, 0, 0};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Amplitude amp_parse(std::string_view text) { return AmplitudeParser(text).parse(); }

std::pair<double, double> amp_to_float(const Amplitude &x) { return {x.re().to_double(), x.im().to_double()}; }

std::string amp_print(const Amplitude &x) { return x.str(); }

}  // namespace qtmhalt
