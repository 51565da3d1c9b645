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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace qtmhalt {

using Rational = mpq_class;

/// A real number a + b*sqrt2 with rational a, b.
///
/// Sign and ordering are decided exactly, so probabilities can be compared
/// against 0 and 1 without a tolerance.
class RealValue {
   public:
    RealValue() = default;
    RealValue(long v) : a_(v) {}
    RealValue(Rational a, Rational b = 0);

    const Rational &rational_part() const { return a_; }
    const Rational &sqrt2_part() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    /// -1, 0 or +1.
    int sign() const;

    RealValue operator-() const;
    RealValue operator+(const RealValue &o) const;
    RealValue operator-(const RealValue &o) const;
    RealValue operator*(const RealValue &o) const;
    /// Throws std::domain_error on division by zero.
    RealValue operator/(const RealValue &o) const;
    RealValue &operator+=(const RealValue &o);
    RealValue &operator-=(const RealValue &o);
    RealValue &operator*=(const RealValue &o);

    bool operator==(const RealValue &o) const { return a_ == o.a_ && b_ == o.b_; }
    bool operator<(const RealValue &o) const { return (*this - o).sign() < 0; }
    bool operator>(const RealValue &o) const { return (*this - o).sign() > 0; }
    bool operator<=(const RealValue &o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const RealValue &o) const { return (*this - o).sign() >= 0; }

    RealValue abs() const { return sign() < 0 ? -*this : *this; }

    /// Nearest double; throws std::overflow_error if out of range.
    double to_double() const;
    /// Canonical literal in the amplitude grammar ("0" for zero).
    std::string str() const;

   private:
    Rational a_;
    Rational b_;
};

/// An element (a + b*sqrt2) + (c + d*sqrt2)*i of Q(i, sqrt2).
class Amplitude {
   public:
    Amplitude() = default;
    Amplitude(long v) : re_(v) {}
    Amplitude(RealValue re, RealValue im = RealValue()) : re_(std::move(re)), im_(std::move(im)) {}
    Amplitude(Rational a, Rational b, Rational c, Rational d);

    static Amplitude inv_sqrt2();
    static Amplitude sqrt2();
    static Amplitude imag_unit();

    const RealValue &re() const { return re_; }
    const RealValue &im() const { return im_; }
    const Rational &a() const { return re_.rational_part(); }
    const Rational &b() const { return re_.sqrt2_part(); }
    const Rational &c() const { return im_.rational_part(); }
    const Rational &d() const { return im_.sqrt2_part(); }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const;

    Amplitude operator-() const { return {-re_, -im_}; }
    Amplitude operator+(const Amplitude &o) const { return {re_ + o.re_, im_ + o.im_}; }
    Amplitude operator-(const Amplitude &o) const { return {re_ - o.re_, im_ - o.im_}; }
    Amplitude operator*(const Amplitude &o) const;
    /// Throws std::domain_error on division by zero.
    Amplitude operator/(const Amplitude &o) const;
    Amplitude &operator+=(const Amplitude &o);
    Amplitude &operator-=(const Amplitude &o);
    Amplitude &operator*=(const Amplitude &o);
    Amplitude conj() const { return {re_, -im_}; }

    bool operator==(const Amplitude &o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const Amplitude &o) const { return !(*this == o); }

    /// Canonical literal in the amplitude grammar.
    std::string str() const;
    std::size_t hash() const;

   private:
    RealValue re_;
    RealValue im_;
};

enum class ArithKind { add, sub, mul, neg, conj };

/// Dispatching form of the field operations. `y` must be given exactly when
/// `kind` is binary.
Amplitude amp_arith(ArithKind kind, const Amplitude &x, const Amplitude *y = nullptr);

/// |x|^2 = x * conj(x).
RealValue norm_sq(const Amplitude &x);

struct AmplitudeParseError : std::runtime_error {
    AmplitudeParseError(const std::string &msg, std::size_t pos);
    std::size_t position;
};

/// Parses the amplitude grammar:
///   amplitude := term (("+" | "-") term)*
///   term      := ["-"] (rational ("*" factor)* | factor ("*" factor)*)
///   factor    := "sqrt2" | "i"
///   rational  := integer ["/" (positive-integer | "sqrt2")]
Amplitude amp_parse(std::string_view text);

/// Component-wise nearest doubles (real, imag).
std::pair<double, double> amp_to_float(const Amplitude &x);

std::string amp_print(const Amplitude &x);

}  // namespace qtmhalt

template <>
struct std::hash<qtmhalt::Amplitude> {
    std::size_t operator()(const qtmhalt::Amplitude &a) const { return a.hash(); }
};
