#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sumfree {

/// Arbitrary-precision integer and exact fraction. cpp_rational keeps the
/// denominator positive and the fraction reduced after every operation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Exact floor of a fraction (integer division truncates toward zero, so
/// negative non-integers need one step down).
inline BigInt floor_of(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

/// Fraction -> double, accurate to within one ulp of the true value. The
/// operands are first rounded to 50 significant decimal digits, so the final
/// 53-bit rounding dominates the error.
inline double to_double(const Rational& r) {
    using Float50 = boost::multiprecision::cpp_bin_float_50;
    Float50 num(numerator(r));
    Float50 den(denominator(r));
    return static_cast<double>(num / den);
}

/// Every finite double is a dyadic rational; recover it exactly.
inline Rational exact_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("exact_from_double: value is not finite");
    if (x == 0.0) return Rational(0);
    int exp2 = 0;
    double mant = std::frexp(x, &exp2);           // x = mant * 2^exp2, |mant| in [0.5, 1)
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));  // exact 53-bit integer
    int shift = exp2 - 53;
    if (shift >= 0) return Rational(BigInt(scaled) << shift);
    return Rational(BigInt(scaled), BigInt(1) << -shift);
}

inline BigInt factorial_big(int k) {
    if (k < 0) throw std::domain_error("factorial of a negative number");
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

/// Binomial coefficient by the multiplicative recurrence; every intermediate
/// division is exact. Returns 0 outside the triangle.
inline BigInt binomial_big(long long n, long long r) {
    if (r < 0 || n < 0 || r > n) return BigInt(0);
    if (r > n - r) r = n - r;
    BigInt c = 1;
    for (long long i = 1; i <= r; ++i) {
        c *= n - r + i;
        c /= i;
    }
    return c;
}

/// Fixed-point decimal rendering with round-half-to-even, computed exactly
/// from the fraction. `decimals` digits after the point, zero-padded.
inline std::string format_decimal(const Rational& value, int decimals) {
    if (decimals < 0) throw std::invalid_argument("format_decimal: negative decimals");
    const bool negative = value < 0;
    BigInt num = negative ? BigInt(-numerator(value)) : numerator(value);
    const BigInt den = denominator(value);
    BigInt scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    num *= scale;
    BigInt whole = num / den;
    const BigInt twice_rem = 2 * (num % den);
    if (twice_rem > den || (twice_rem == den && (whole % 2) != 0)) ++whole;

    std::string digits = whole.str();
    if (static_cast<int>(digits.size()) <= decimals)
        digits.insert(0, decimals + 1 - digits.size(), '0');
    if (decimals > 0) digits.insert(digits.size() - decimals, ".");
    if (negative && whole != 0) digits.insert(0, "-");
    return digits;
}

inline std::string format_decimal(double value, int decimals) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return format_decimal(exact_from_double(value), decimals);
}

/// "p/q" (or just "p" for integers).
inline std::string to_fraction_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace sumfree
