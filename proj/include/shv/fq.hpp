// Finite fields F_p (word-sized p) and F_{p^k} (small q, log/exp tables).
//
// F_p elements carry their modulus, so generic polynomial and matrix code can
// operate on them without global state. Extension fields share an immutable
// context holding a fixed irreducible modulus per (p, k); the modulus is the
// lexicographically smallest monic irreducible, so the field is reproducible
// across runs.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace shv {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1u) r = mulmod64(r, a, p);
        a = mulmod64(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod64(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("invmod64: zero");
    return powmod64(a, p - 2, p);
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime-field element carrying its modulus.
struct Fp {
    std::uint64_t v = 0;
    std::uint64_t p = 0;  // p == 0 marks an uninitialized exemplar-free zero

    Fp() = default;
    Fp(std::uint64_t value, std::uint64_t prime) : v(value % prime), p(prime) {}

    // Exemplar-free small constant; the modulus is resolved by the first
    // arithmetic partner. Generic code relies on K(1) being available.
    explicit Fp(int c) : v(static_cast<std::uint64_t>(c)), p(0) {
        if (c < 0) throw std::invalid_argument("Fp: exemplar-free constant must be >= 0");
    }

    static Fp from_int(long long x, std::uint64_t prime) {
        long long r = x % static_cast<long long>(prime);
        if (r < 0) r += static_cast<long long>(prime);
        return Fp(static_cast<std::uint64_t>(r), prime);
    }

    bool is_zero() const { return v == 0; }

    friend Fp operator+(Fp a, Fp b) {
        std::uint64_t p = a.p ? a.p : b.p;
        if (!p) { Fp r; r.v = a.v + b.v; return r; }
        return Fp((a.v + b.v) % p, p);
    }
    friend Fp operator-(Fp a, Fp b) {
        std::uint64_t p = a.p ? a.p : b.p;
        if (!p) {
            if (a.v < b.v) throw std::logic_error("Fp: negative exemplar-free difference");
            Fp r; r.v = a.v - b.v; return r;
        }
        return Fp((a.v % p + p - b.v % p) % p, p);
    }
    friend Fp operator*(Fp a, Fp b) {
        std::uint64_t p = a.p ? a.p : b.p;
        if (!p) { Fp r; r.v = a.v * b.v; return r; }
        return Fp(mulmod64(a.v % p, b.v % p, p), p);
    }
    friend Fp operator/(Fp a, Fp b) {
        std::uint64_t p = pick(a, b);
        return Fp(mulmod64(a.v, invmod64(b.v, p), p), p);
    }
    Fp operator-() const { return Fp(p - v % p, p); }
    Fp inverse() const { return Fp(invmod64(v, p), p); }
    Fp pow(std::uint64_t e) const { return Fp(powmod64(v, e, p), p); }
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }

    bool is_square() const {
        if (v == 0) return true;
        return powmod64(v, (p - 1) / 2, p) == 1;
    }

  private:
    static std::uint64_t pick(const Fp& a, const Fp& b) {
        std::uint64_t p = a.p ? a.p : b.p;
        if (!p) throw std::logic_error("Fp: operation on two exemplar-free zeros");
        return p;
    }
};

// Shared context for F_{p^k}. Elements are indices 0..q-1 whose base-p digits
// are the coefficients of the residue polynomial; multiplication goes through
// discrete log/exp tables built from a generator.
class FqCtx {
  public:
    FqCtx(std::uint64_t p, unsigned k);

    std::uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint64_t>& modulus() const { return mod_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("FqCtx: inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t from_int(long long x) const;    // image of an integer
    std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }
    bool is_square(std::uint32_t a) const;
    // Multiplicative order of a nonzero element.
    std::uint64_t order(std::uint32_t a) const;

    // Shared, process-lifetime context per (p, k).
    static const FqCtx& get(std::uint64_t p, unsigned k);

  private:
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint64_t> mod_;      // monic irreducible, degree k (coeff of x^i at i)
    std::vector<std::uint32_t> log_;      // log of nonzero elements
    std::vector<std::uint32_t> exp_;      // generator powers
};

// Extension-field element bound to a context.
struct Fq {
    std::uint32_t idx = 0;
    const FqCtx* ctx = nullptr;

    Fq() = default;
    Fq(std::uint32_t i, const FqCtx& c) : idx(i), ctx(&c) {}

    bool is_zero() const { return idx == 0; }

    friend Fq operator+(Fq a, Fq b) { return Fq(pick(a, b)->add(a.idx, b.idx), *pick(a, b)); }
    friend Fq operator-(Fq a, Fq b) { return Fq(pick(a, b)->sub(a.idx, b.idx), *pick(a, b)); }
    friend Fq operator*(Fq a, Fq b) { return Fq(pick(a, b)->mul(a.idx, b.idx), *pick(a, b)); }
    friend Fq operator/(Fq a, Fq b) {
        const FqCtx* c = pick(a, b);
        return Fq(c->mul(a.idx, c->inv(b.idx)), *c);
    }
    Fq operator-() const { return Fq(ctx->neg(idx), *ctx); }
    Fq inverse() const { return Fq(ctx->inv(idx), *ctx); }
    friend bool operator==(Fq a, Fq b) { return a.idx == b.idx; }
    friend bool operator!=(Fq a, Fq b) { return a.idx != b.idx; }

  private:
    static const FqCtx* pick(const Fq& a, const Fq& b) {
        const FqCtx* c = a.ctx ? a.ctx : b.ctx;
        if (!c) throw std::logic_error("Fq: operation on two context-free zeros");
        return c;
    }
};

}  // namespace shv
