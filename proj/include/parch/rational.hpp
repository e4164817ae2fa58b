#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parch {

/// Thrown when a string does not denote a rational number ("1/0", "x", "").
class RationalFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper around GMP's mpq_class; every constructor and
/// arithmetic result is canonicalized, so equality is structural.
class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
    Rational(long numerator, long denominator);
    explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }
    Rational(const mpz_class& numerator, const mpz_class& denominator);

    /// Parses "p", "p/q", "-p/q" (optionally surrounded by whitespace).
    static Rational parse(std::string_view text);

    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] int sign() const { return sgn(value_); }

    /// "p" for integers, "p/q" otherwise.
    [[nodiscard]] std::string to_string() const;
    /// Always "p/q", including "0/1" and "3/1"; used in JSON.
    [[nodiscard]] std::string to_fraction_string() const;

    Rational& operator+=(const Rational& other) { value_ += other.value_; return *this; }
    Rational& operator-=(const Rational& other) { value_ -= other.value_; return *this; }
    Rational& operator*=(const Rational& other) { value_ *= other.value_; return *this; }
    Rational& operator/=(const Rational& other);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    /// a^k for k >= 0.
    [[nodiscard]] Rational pow(unsigned k) const;

private:
    mpq_class value_{0};
};

/// k! as a rational.
Rational factorial(unsigned k);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace parch
