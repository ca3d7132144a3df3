#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace permlift {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational ratio(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline BigInt ipow(BigInt base, unsigned e)
{
    BigInt r = 1;
    while (e) {
        if (e & 1u)
            r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

inline BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline Rational clamp01(const Rational& r)
{
    if (r < 0)
        return 0;
    if (r > 1)
        return 1;
    return r;
}

/// "p/q" in lowest terms, or "p" when the denominator is 1.
inline std::string to_string(const Rational& r)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}
