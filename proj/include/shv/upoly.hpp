// Dense univariate polynomials over an exact field.
//
// The coefficient type K must default-construct to zero, be constructible
// from long, and support +, -, *, /, == . Used for cyclotomic inversion,
// rational function fields, and local computations in Tate's algorithm.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace shv {

template <typename K>
class UPoly {
  public:
    UPoly() = default;
    explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static UPoly constant(const K& k) { return UPoly(std::vector<K>{k}); }
    static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }

    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const K& operator[](std::size_t i) const {
        static const K zero{};
        return i < c_.size() ? c_[i] : zero;
    }
    void set_coeff(std::size_t i, const K& v) {
        if (i >= c_.size()) c_.resize(i + 1, K(0));
        c_[i] = v;
        trim();
    }
    const std::vector<K>& coeffs() const { return c_; }

    const K& leading() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        std::vector<K> r = c_;
        for (auto& v : r) v = K(0) - v;
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const K& k, const UPoly& a) {
        std::vector<K> r = a.c_;
        for (auto& v : r) v = k * v;
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // Euclidean division; the divisor's leading coefficient must be invertible.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        q = UPoly();
        r = a;
        const K lead_inv = K(1) / b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            const int shift = r.degree() - b.degree();
            const K factor = r.leading() * lead_inv;
            std::vector<K> qc(q.c_);
            if (qc.size() < static_cast<std::size_t>(shift + 1)) qc.resize(shift + 1, K(0));
            qc[shift] = qc[shift] + factor;
            q = UPoly(std::move(qc));
            std::vector<K> rc(r.c_);
            for (int i = 0; i <= b.degree(); ++i)
                rc[i + shift] = rc[i + shift] - factor * b.c_[i];
            rc.pop_back();
            r = UPoly(std::move(rc));
        }
    }
    friend UPoly operator/(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return r;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return (K(1) / leading()) * *this;
    }

    UPoly pow(int e) const {
        UPoly r = constant(K(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = b;
            b = r;
        }
        return a.monic();
    }

    // Extended gcd: returns g and sets u, v with u*a + v*b = g (g monic).
    static UPoly xgcd(const UPoly& a, const UPoly& b, UPoly& u, UPoly& v) {
        UPoly r0 = a, r1 = b;
        UPoly u0 = constant(K(1)), u1;
        UPoly v0, v1 = constant(K(1));
        while (!r1.is_zero()) {
            UPoly q, r;
            divmod(r0, r1, q, r);
            UPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
            r0 = r1; r1 = r;
            u0 = u1; u1 = u2;
            v0 = v1; v1 = v2;
        }
        if (!r0.is_zero()) {
            K inv = K(1) / r0.leading();
            r0 = inv * r0;
            u0 = inv * u0;
            v0 = inv * v0;
        }
        u = u0;
        v = v0;
        return r0;
    }

    K eval(const K& x) const {
        K r(0);
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<K> r(c_.size() - 1, K(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = K(static_cast<long>(i)) * c_[i];
        return UPoly(std::move(r));
    }

    // Substitute x -> x + s.
    UPoly shifted(const K& s) const {
        UPoly r, xs = UPoly(std::vector<K>{s, K(1)});
        for (std::size_t i = c_.size(); i-- > 0;) r = r * xs + constant(c_[i]);
        return r;
    }

    // Reverse coefficients up to degree n (x -> 1/x followed by clearing x^n).
    UPoly reversed(std::size_t n) const {
        std::vector<K> r(n + 1, K(0));
        for (std::size_t i = 0; i < c_.size() && i <= n; ++i) r[n - i] = c_[i];
        return UPoly(std::move(r));
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
    }
    std::vector<K> c_;
};

}  // namespace shv
