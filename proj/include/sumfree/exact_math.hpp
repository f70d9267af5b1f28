#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sumfree/rational.hpp"

namespace sumfree {

/// Volume query for the corner simplex {x in [0,1]^k : x_1 + ... + x_k <= a}.
struct SimplexVolumeQuery {
    int k;
    Rational a;

    SimplexVolumeQuery(int k_, Rational a_) : k(k_), a(std::move(a_)) {
        if (k < 1) throw std::domain_error("simplex volume: k must be >= 1");
        if (a < 0 || a > k) throw std::domain_error("simplex volume: a must lie in [0, k]");
    }
};

/// Vol{x in [0,1]^k : sum x_i <= a}, exact. Inclusion-exclusion over the
/// unit-cube faces gives
///
///     (1/k!) * sum_{i=0}^{floor(a)} (-1)^i C(k,i) (a - i)^k.
///
/// With a = p/q the sum is evaluated over a common denominator q^k so every
/// intermediate stays an integer:
///
///     [ sum_i (-1)^i C(k,i) (p - i q)^k ] / (k! q^k).
inline Rational simplex_volume(const SimplexVolumeQuery& query) {
    const int k = query.k;
    const BigInt p = numerator(query.a);
    const BigInt q = denominator(query.a);
    const BigInt fl = floor_of(query.a);  // 0 <= fl <= k, so it fits in an int
    const auto top = static_cast<int>(fl);

    BigInt sum = 0;
    BigInt coeff = 1;  // C(k, i), updated multiplicatively
    for (int i = 0; i <= top; ++i) {
        BigInt base = p - i * q;
        BigInt power = 1;
        for (int j = 0; j < k; ++j) power *= base;
        if (i % 2 == 0)
            sum += coeff * power;
        else
            sum -= coeff * power;
        coeff *= k - i;
        coeff /= i + 1;
    }

    BigInt den = factorial_big(k);
    for (int j = 0; j < k; ++j) den *= q;
    return Rational(sum, den);
}

inline Rational simplex_volume(int k, const Rational& a) {
    return simplex_volume(SimplexVolumeQuery(k, a));
}

/// Float companion of simplex_volume for irrational thresholds; the grid
/// sweep is the only intended caller. Same alternating sum in doubles with
/// Neumaier-compensated accumulation. For k <= 60 the terms stay below
/// ~1e9 * the result scale, so the absolute error is ~1e-7 at worst and
/// far smaller for the k <= 10 range the sweep mostly serves.
inline double simplex_volume(int k, double a) {
    if (k < 1) throw std::domain_error("simplex volume: k must be >= 1");
    if (!(a >= 0.0) || a > static_cast<double>(k))
        throw std::domain_error("simplex volume: a must lie in [0, k]");
    const int top = static_cast<int>(std::floor(a));

    double sum = 0.0, comp = 0.0;
    double coeff = 1.0;
    for (int i = 0; i <= top; ++i) {
        const double term_mag = coeff * std::pow(a - i, k);
        const double term = (i % 2 == 0) ? term_mag : -term_mag;
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        coeff = coeff * (k - i) / (i + 1);
    }
    double kfact = 1.0;
    for (int j = 2; j <= k; ++j) kfact *= j;
    return (sum + comp) / kfact;
}

/// Number of x in {1..n}^k with x_1 + ... + x_k = m. Shifting to y = x - 1
/// and sieving out coordinates that exceed n - 1 gives, with s = m - k,
///
///     sum_{j=0}^{floor(s/n)} (-1)^j C(k,j) C(s - j n + k - 1, k - 1).
///
/// Zero outside the reachable band [k, k n].
inline BigInt bounded_composition_count(int k, long long n, long long m) {
    if (k < 1) throw std::domain_error("composition count: k must be >= 1");
    if (n < 1) throw std::domain_error("composition count: n must be >= 1");
    if (m < k || m > static_cast<long long>(k) * n) return BigInt(0);

    const long long s = m - k;
    BigInt total = 0;
    for (long long j = 0; j <= s / n && j <= k; ++j) {
        BigInt term = binomial_big(k, j) * binomial_big(s - j * n + k - 1, k - 1);
        if (j % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

/// Tail of the exponential series: sum_{i >= from} x^i / i! for x >= 0.
/// Ascending compensated accumulation; stops once a term falls below
/// rel_floor relative to the running sum (or vanishes).
inline double exp_series_tail(double x, int from, double rel_floor = 1e-18) {
    if (x < 0) throw std::domain_error("exp_series_tail: x must be >= 0");
    if (from < 0) throw std::domain_error("exp_series_tail: from must be >= 0");
    double term = 1.0;
    for (int i = 1; i <= from; ++i) term *= x / i;
    double sum = 0.0, comp = 0.0;
    for (int i = from; i < from + 1000000; ++i) {
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        term *= x / (i + 1);
        if (term == 0.0 || term < rel_floor * (sum + comp)) break;
    }
    return sum + comp;
}

/// Vol{x in [0,1]^k : prod x_i > c} for c in (0, 1]. Writing L = ln(1/c),
/// repeated integration yields 1 - c * sum_{i=0}^{k-1} L^i / i!, which is
/// identically c * sum_{i >= k} L^i / i!. The tail form is the one computed
/// here: the leading form cancels catastrophically once the volume drops
/// below ~1e-16 (large k, c near 1), while the tail's terms are all positive.
inline double log_wedge_complement(int k, double c) {
    if (k < 1) throw std::domain_error("log wedge: k must be >= 1");
    if (!(c > 0.0) || c > 1.0) throw std::domain_error("log wedge: c must lie in (0, 1]");
    const double big_l = -std::log(c);
    return c * exp_series_tail(big_l, k);
}

}  // namespace sumfree
