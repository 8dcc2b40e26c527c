// Chinese remaindering and rational reconstruction, used to lift modular
// images of field elements back to exact rationals.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "shv/rational.hpp"

namespace shv {

// Extended Euclid: returns g = gcd(a, b) and s, t with s*a + t*b = g.
inline Integer xgcd_int(Integer a, Integer b, Integer& s, Integer& t) {
    Integer s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        Integer q = a / b;
        Integer tmp = a - q * b; a = b; b = tmp;
        tmp = s0 - q * s1; s0 = s1; s1 = tmp;
        tmp = t0 - q * t1; t0 = t1; t1 = tmp;
    }
    s = s0; t = t0;
    return a;
}

// Smallest nonnegative x with x = r_i mod m_i for pairwise coprime moduli.
inline Integer crt(const std::vector<Integer>& residues, const std::vector<Integer>& moduli) {
    if (residues.size() != moduli.size() || residues.empty())
        throw std::invalid_argument("crt: bad input sizes");
    Integer x = residues[0] % moduli[0];
    Integer m = moduli[0];
    for (std::size_t i = 1; i < residues.size(); ++i) {
        // Solve x + m*t = residues[i] mod moduli[i].
        Integer s, t;
        if (xgcd_int(m, moduli[i], s, t) != 1)
            throw std::invalid_argument("crt: moduli not coprime");
        Integer diff = (residues[i] - x) % moduli[i];
        Integer step = (diff * s) % moduli[i];
        x += m * step;
        m *= moduli[i];
        x %= m;
        if (x < 0) x += m;
    }
    return x;
}

// Find a/b with a = c*b mod m, |a|, b <= sqrt(m/2), gcd(b, m) = 1.
// Standard half-extended Euclid; returns nullopt if no such fraction exists.
inline std::optional<Rational> rational_reconstruct(Integer c, const Integer& m) {
    c %= m;
    if (c < 0) c += m;
    const Integer half = m / 2;
    const Integer bound = boost::multiprecision::sqrt(half);
    Integer r0 = m, r1 = c;
    Integer t0 = 0, t1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        Integer t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Integer a = r1, b = t1;
    if (b < 0) { a = -a; b = -b; }
    if (b > bound || boost::multiprecision::gcd(a, b) != 1) return std::nullopt;
    if (boost::multiprecision::gcd(b, m) != 1) return std::nullopt;
    return Rational(a) / Rational(b);
}

}  // namespace shv
