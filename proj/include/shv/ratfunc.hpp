// Fraction field of UPoly<K>: rational functions in one variable.
//
// Fractions are kept normalized with a monic denominator and gcd removed,
// so equality is plain component comparison. Used as the base field for
// curves over Q(t) and for the birational reductions to Weierstrass form.

#pragma once

#include "shv/upoly.hpp"

namespace shv {

template <typename K>
struct Frac {
    UPoly<K> num, den = UPoly<K>::constant(K(1));

    Frac() = default;
    explicit Frac(int c) : num(UPoly<K>::constant(K(c))) {
        if (c == 0) num = UPoly<K>();
    }
    explicit Frac(const K& c) : num(UPoly<K>::constant(c)) {}
    explicit Frac(UPoly<K> n) : num(std::move(n)) {}
    Frac(UPoly<K> n, UPoly<K> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static Frac t() { return Frac(UPoly<K>::x()); }

    bool is_zero() const { return num.is_zero(); }
    bool is_polynomial() const { return den.degree() == 0; }

    // Numerator after scaling the denominator away; valid when is_polynomial().
    UPoly<K> poly() const {
        if (!is_polynomial()) throw std::domain_error("Frac: not a polynomial");
        return (K(1) / den[0]) * num;
    }

    friend Frac operator+(const Frac& a, const Frac& b) {
        return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Frac operator-(const Frac& a, const Frac& b) {
        return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Frac operator*(const Frac& a, const Frac& b) {
        return Frac(a.num * b.num, a.den * b.den);
    }
    friend Frac operator/(const Frac& a, const Frac& b) {
        if (b.is_zero()) throw std::domain_error("Frac: division by zero");
        return Frac(a.num * b.den, a.den * b.num);
    }
    Frac operator-() const {
        Frac r = *this;
        r.num = -r.num;
        return r;
    }
    friend bool operator==(const Frac& a, const Frac& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

    Frac pow(int e) const {
        if (e < 0) return Frac(1) / pow(-e);
        Frac r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    K eval(const K& x) const { return num.eval(x) / den.eval(x); }

  private:
    void normalize() {
        if (den.is_zero()) throw std::domain_error("Frac: zero denominator");
        if (num.is_zero()) {
            den = UPoly<K>::constant(K(1));
            return;
        }
        UPoly<K> g = UPoly<K>::gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        K lead = den.leading();
        if (!(lead == K(1))) {
            K inv = K(1) / lead;
            num = inv * num;
            den = inv * den;
        }
    }
};

}  // namespace shv
