#include "cashctl/rational.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace cashctl {

namespace {

using Integer = Rational::Integer;

Integer pow10(unsigned exponent)
{
    Integer result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= 10;
    return result;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad_number(std::string_view text)
{
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
}

Integer parse_integer_digits(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) bad_number(whole);
    Integer out = 0;
    for (char c : digits) {
        if (!is_digit(c)) bad_number(whole);
        out = out * 10 + (c - '0');
    }
    return out;
}

Rational parse_decimal(std::string_view text, std::string_view whole)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        std::string_view exp_text = text.substr(e + 1);
        if (exp_text.empty()) bad_number(whole);
        if (exp_text.front() == '+') exp_text.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size()) bad_number(whole);
        if (exponent > 4000 || exponent < -4000) bad_number(whole);
    }
    std::string digits;
    long fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad_number(whole);
        digits.append(int_part);
        digits.append(frac_part);
        fraction_digits = static_cast<long>(frac_part.size());
    } else {
        digits.append(mantissa);
    }
    Integer num = parse_integer_digits(digits, whole);
    if (negative) num = -num;
    long scale = fraction_digits - exponent;
    if (scale >= 0) return Rational(num, pow10(static_cast<unsigned>(scale)));
    return Rational(num * pow10(static_cast<unsigned>(-scale)), Integer(1));
}

}  // namespace

Rational::Rational(const Integer& numerator, const Integer& denominator)
{
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = Value(numerator, denominator);
}

Rational Rational::parse(std::string_view text)
{
    std::string_view whole = text;
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) bad_number(whole);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash), whole);
        Rational den = parse_decimal(text.substr(slash + 1), whole);
        if (den.is_zero()) bad_number(whole);
        return num / den;
    }
    return parse_decimal(text, whole);
}

Rational Rational::from_double(double value)
{
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
    int exponent = 0;
    double mantissa = std::frexp(value, &exponent);
    // 53-bit mantissa scaled to an integer, exact.
    auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Integer num = scaled;
    Integer den = 1;
    if (exponent >= 0) num <<= exponent;
    else den <<= -exponent;
    return {num, den};
}

double Rational::to_double() const
{
    return value_.convert_to<double>();
}

Rational::Integer Rational::floor() const
{
    Integer num = numerator();
    Integer den = denominator();
    Integer q = num / den;
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

Rational::Integer Rational::ceil() const
{
    Integer num = numerator();
    Integer den = denominator();
    Integer q = num / den;
    if (num > 0 && q * den != num) q += 1;
    return q;
}

Rational& Rational::operator/=(const Rational& rhs)
{
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::round_half_even(int scale) const
{
    if (scale < 0) throw std::invalid_argument("negative scale");
    Integer factor = pow10(static_cast<unsigned>(scale));
    Rational scaled = *this * Rational(factor, Integer(1));
    Integer lower = scaled.floor();
    Rational remainder = scaled - Rational(lower, Integer(1));
    Rational half(Integer(1), Integer(2));
    Integer chosen = lower;
    if (remainder > half || (remainder == half && (lower % 2) != 0)) chosen = lower + 1;
    return {chosen, factor};
}

std::string Rational::to_fixed(int scale) const
{
    Rational rounded = round_half_even(scale);
    Integer factor = pow10(static_cast<unsigned>(scale));
    Integer units = rounded.numerator() * (factor / rounded.denominator());
    bool negative = units < 0;
    if (negative) units = -units;
    std::string digits = units.str();
    if (scale > 0) {
        if (digits.size() <= static_cast<std::size_t>(scale))
            digits.insert(0, static_cast<std::size_t>(scale) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(scale), ".");
    }
    return negative ? "-" + digits : digits;
}

std::string Rational::to_exact_string() const
{
    Integer den = denominator();
    Integer rest = den;
    unsigned twos = 0;
    unsigned fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return numerator().str() + "/" + den.str();
    if (den == 1) return numerator().str();
    std::string text = to_fixed(static_cast<int>(std::max(twos, fives)));
    return text;
}

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
    return os << value.to_exact_string();
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace cashctl
