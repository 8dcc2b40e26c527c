// Arbitrary-precision rational and integer types used throughout the library.
//
// All exact computations run over GMP-backed types; no fixed-width arithmetic
// is used outside of the finite-field layer.

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace shv {

using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer int_pow(Integer base, unsigned e) {
    Integer r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational rat_pow(const Rational& base, int e) {
    if (e < 0) return Rational(1) / rat_pow(base, -e);
    Rational r = 1, b = base;
    unsigned k = static_cast<unsigned>(e);
    while (k) {
        if (k & 1u) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

// Residue of a rational modulo an odd prime p (the denominator must be prime
// to p); used when specializing exact data to finite fields.
inline std::uint64_t rat_mod_p(const Rational& r, std::uint64_t p) {
    Integer n = numerator(r) % Integer(p);
    if (n < 0) n += p;
    Integer d = denominator(r) % Integer(p);
    if (d == 0) throw std::domain_error("rat_mod_p: denominator divisible by p");
    // Fermat inversion of the denominator.
    std::uint64_t dv = d.convert_to<std::uint64_t>(), inv = 1, b = dv, e = p - 2;
    auto mulmod = [p](std::uint64_t a, std::uint64_t c) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * c) % p);
    };
    while (e) {
        if (e & 1u) inv = mulmod(inv, b);
        b = mulmod(b, b);
        e >>= 1;
    }
    return mulmod(n.convert_to<std::uint64_t>(), inv);
}

}  // namespace shv
