#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cashctl {

/// Exact signed rational number. Every monetary amount, quantity and ratio
/// in the engines is carried by this type, so balance identities can be
/// asserted with operator== rather than a tolerance.
///
/// Text forms accepted by parse(): integers ("-12"), decimals ("10.25",
/// ".5", "1e3", "2.5E-2") and fractions ("10/3"). Binary floating point
/// only enters through from_double(), which is exact for the given double.
class Rational {
public:
    using Integer = boost::multiprecision::cpp_int;
    using Value = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(long long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& numerator, const Integer& denominator);
    explicit Rational(Value value) : value_(std::move(value)) {}

    static Rational parse(std::string_view text);
    static Rational from_double(double value);

    [[nodiscard]] Integer numerator() const { return boost::multiprecision::numerator(value_); }
    [[nodiscard]] Integer denominator() const { return boost::multiprecision::denominator(value_); }
    [[nodiscard]] const Value& value() const { return value_; }

    [[nodiscard]] int sign() const { return value_.sign(); }
    [[nodiscard]] bool is_zero() const { return value_.is_zero(); }
    [[nodiscard]] bool is_integer() const { return denominator() == 1; }
    [[nodiscard]] Rational abs() const { return Rational(value_ < 0 ? Value(-value_) : value_); }
    [[nodiscard]] double to_double() const;

    /// Largest integer not greater than this value.
    [[nodiscard]] Integer floor() const;
    /// Smallest integer not less than this value.
    [[nodiscard]] Integer ceil() const;

    /// Exact text: a finite decimal when the denominator has only the prime
    /// factors 2 and 5, "num/den" otherwise. parse(to_exact_string()) == *this.
    [[nodiscard]] std::string to_exact_string() const;

    /// Rounded to `scale` fractional digits, ties to even, always printing
    /// exactly `scale` digits after the point.
    [[nodiscard]] std::string to_fixed(int scale) const;
    [[nodiscard]] Rational round_half_even(int scale) const;

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& v) { return Rational(Value(-v.value_)); }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs)
    {
        if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
        if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    Value value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// Domain aliases. They document the unit of a field; arithmetic between them
// is unrestricted because the engines multiply and divide across units freely.
using Money = Rational;
using Quantity = Rational;
using UnitValue = Rational;
using Fraction = Rational;

}  // namespace cashctl
