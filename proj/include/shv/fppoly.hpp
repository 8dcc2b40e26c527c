// Dense univariate polynomial arithmetic mod p. This is the workhorse under
// the interpolation-based multivariate gcd, so it stays close to raw vectors.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shv/fq.hpp"

namespace shv {

struct FpPoly {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> c;  // c[i] multiplies x^i; no trailing zeros

    FpPoly() = default;
    explicit FpPoly(std::uint64_t prime) : p(prime) {}
    FpPoly(std::uint64_t prime, std::vector<std::uint64_t> coeffs)
        : p(prime), c(std::move(coeffs)) {
        for (auto& v : c) v %= p;
        trim();
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    std::uint64_t lead() const { return c.back(); }
    std::uint64_t coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0;
    }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        FpPoly r(a.p ? a.p : b.p);
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.c.size(); ++i)
            r.c[i] = (a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i))) % r.p;
        r.trim();
        return r;
    }
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        FpPoly r(a.p ? a.p : b.p);
        r.c.resize(std::max(a.c.size(), b.c.size()), 0);
        for (std::size_t i = 0; i < r.c.size(); ++i)
            r.c[i] = (a.coeff(static_cast<int>(i)) + r.p - b.coeff(static_cast<int>(i))) % r.p;
        r.trim();
        return r;
    }
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        FpPoly r(a.p ? a.p : b.p);
        if (a.is_zero() || b.is_zero()) return r;
        r.c.assign(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = (r.c[i + j] + mulmod64(a.c[i], b.c[j], r.p)) % r.p;
        }
        r.trim();
        return r;
    }
    FpPoly scaled(std::uint64_t k) const {
        FpPoly r(p);
        r.c.reserve(c.size());
        for (auto v : c) r.c.push_back(mulmod64(v, k % p, p));
        r.trim();
        return r;
    }
    FpPoly monic() const {
        if (is_zero()) return *this;
        return scaled(invmod64(lead(), p));
    }

    std::uint64_t eval(std::uint64_t x) const {
        std::uint64_t r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = (mulmod64(r, x, p) + c[i]) % p;
        return r;
    }

    FpPoly derivative() const {
        FpPoly r(p);
        for (std::size_t i = 1; i < c.size(); ++i)
            r.c.push_back(mulmod64(c[i], i % p, p));
        r.trim();
        return r;
    }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.c == b.c; }
};

inline void fp_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
    if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
    const std::uint64_t p = b.p;
    q = FpPoly(p);
    r = a;
    r.p = p;
    if (a.degree() < b.degree()) return;
    q.c.assign(a.degree() - b.degree() + 1, 0);
    const std::uint64_t linv = invmod64(b.lead(), p);
    for (int i = a.degree(); i >= b.degree(); --i) {
        if (r.coeff(i) == 0) continue;
        const std::uint64_t f = mulmod64(r.c[i], linv, p);
        q.c[i - b.degree()] = f;
        for (int j = 0; j <= b.degree(); ++j) {
            auto& dst = r.c[i - b.degree() + j];
            dst = (dst + p - mulmod64(f, b.c[j], p)) % p;
        }
    }
    q.trim();
    r.trim();
}

inline FpPoly fp_mod(const FpPoly& a, const FpPoly& b) {
    FpPoly q, r;
    fp_divmod(a, b, q, r);
    return r;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = fp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Newton interpolation through distinct nodes.
inline FpPoly fp_interpolate(std::uint64_t p, const std::vector<std::uint64_t>& xs,
                             const std::vector<std::uint64_t>& ys) {
    const std::size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("fp_interpolate: size mismatch");
    // Divided differences.
    std::vector<std::uint64_t> dd = ys;
    for (auto& v : dd) v %= p;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = n - 1; i >= k; --i) {
            const std::uint64_t dx = (xs[i] % p + p - xs[i - k] % p) % p;
            if (dx == 0) throw std::invalid_argument("fp_interpolate: repeated node");
            dd[i] = mulmod64((dd[i] + p - dd[i - 1]) % p, invmod64(dx, p), p);
        }
    }
    FpPoly r(p);
    for (std::size_t i = n; i-- > 0;) {
        // r = r * (x - xs[i]) + dd[i]
        FpPoly lin(p, {(p - xs[i] % p) % p, 1});
        r = r * lin;
        r = r + FpPoly(p, {dd[i]});
    }
    return r;
}

}  // namespace shv
