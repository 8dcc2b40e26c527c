#include "shv/fq.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace shv {

namespace {

// Multiply two residue polynomials (digit vectors) modulo the field modulus.
std::vector<std::uint64_t> polymulmod(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b,
                                      const std::vector<std::uint64_t>& mod, std::uint64_t p,
                                      unsigned k) {
    std::vector<std::uint64_t> t(2 * k, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < k; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    }
    for (unsigned d = 2 * k - 1; d >= k; --d) {
        if (!t[d]) continue;
        std::uint64_t c = t[d];
        // x^d = -sum mod[i] x^{d-k+i}
        for (unsigned i = 0; i < k; ++i)
            t[d - k + i] = (t[d - k + i] + (p - mod[i] % p) * c) % p;
        t[d] = 0;
        if (d == k) break;
    }
    t.resize(k);
    return t;
}

std::uint64_t digits_to_index(const std::vector<std::uint64_t>& d, std::uint64_t p, unsigned k) {
    std::uint64_t idx = 0;
    for (unsigned i = k; i-- > 0;) idx = idx * p + d[i];
    return idx;
}

std::vector<std::uint64_t> index_to_digits(std::uint64_t idx, std::uint64_t p, unsigned k) {
    std::vector<std::uint64_t> d(k);
    for (unsigned i = 0; i < k; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

// Tests irreducibility over F_p by checking for roots in every subextension
// via gcd(x^{p^d} - x, f) degree bookkeeping done by brute force: for the
// small degrees used here (k <= 4) trial division by all monic polynomials of
// degree <= k/2 is cheap and unambiguous.
bool is_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p, unsigned k) {
    // f has degree k, monic, coefficients f[0..k-1] plus implicit leading 1.
    for (unsigned d = 1; d <= k / 2; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            // Candidate monic divisor g of degree d.
            std::vector<std::uint64_t> g = index_to_digits(m, p, d);
            g.push_back(1);
            // Remainder of f modulo g via synthetic division.
            std::vector<std::uint64_t> r(f);
            r.push_back(1);  // leading coefficient of f
            for (int i = static_cast<int>(k); i >= static_cast<int>(d); --i) {
                std::uint64_t c = r[i];
                if (!c) continue;
                for (unsigned j = 0; j <= d; ++j)
                    r[i - d + j] = (r[i - d + j] + (p - g[j] % p) * c) % p;
            }
            bool zero = true;
            for (unsigned j = 0; j < d; ++j)
                if (r[j]) { zero = false; break; }
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

FqCtx::FqCtx(std::uint64_t p, unsigned k) : p_(p), k_(k) {
    if (!is_prime_u64(p)) throw std::domain_error("FqCtx: p not prime");
    if (k < 1 || k > 6) throw std::domain_error("FqCtx: unsupported extension degree");
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) {
        q_ *= p;
        if (q_ > (1u << 22)) throw std::domain_error("FqCtx: field too large for table backend");
    }

    // Lexicographically smallest monic irreducible of degree k.
    mod_.assign(k, 0);
    if (k == 1) {
        mod_[0] = 0;  // modulus x: residues are the prime field itself
    } else {
        bool found = false;
        std::uint64_t count = 1;
        for (unsigned i = 0; i < k; ++i) count *= p;
        for (std::uint64_t m = 0; m < count && !found; ++m) {
            std::vector<std::uint64_t> f = index_to_digits(m, p, k);
            if (is_irreducible(f, p, k)) {
                mod_ = f;
                found = true;
            }
        }
        if (!found) throw std::logic_error("FqCtx: no irreducible found");
    }

    // Find a multiplicative generator and build log/exp tables.
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    std::vector<std::uint64_t> xdig(k, 0);
    for (std::uint64_t g = 1; g < q_; ++g) {
        std::vector<std::uint64_t> gd = index_to_digits(g, p, k);
        std::vector<std::uint64_t> acc(k, 0);
        acc[0] = 1;
        bool ok = true;
        std::vector<std::uint32_t> seen;
        seen.reserve(q_ - 1);
        for (std::uint64_t e = 0; e < q_ - 1; ++e) {
            std::uint64_t idx = digits_to_index(acc, p, k);
            if (idx == 1 && e > 0) { ok = false; break; }
            seen.push_back(static_cast<std::uint32_t>(idx));
            acc = k == 1 ? std::vector<std::uint64_t>{mulmod64(acc[0], gd[0], p)}
                         : polymulmod(acc, gd, mod_, p, k);
        }
        if (!ok) continue;
        for (std::uint64_t e = 0; e < q_ - 1; ++e) {
            exp_[e] = seen[e];
            log_[seen[e]] = static_cast<std::uint32_t>(e);
        }
        return;
    }
    throw std::logic_error("FqCtx: no generator found");
}

std::uint32_t FqCtx::add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t da = a % p_, db = b % p_;
        a = static_cast<std::uint32_t>(a / p_);
        b = static_cast<std::uint32_t>(b / p_);
        r += ((da + db) % p_) * mul;
        mul *= p_;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t FqCtx::neg(std::uint32_t a) const {
    std::uint64_t r = 0, mul = 1;
    for (unsigned i = 0; i < k_; ++i) {
        std::uint64_t da = a % p_;
        a = static_cast<std::uint32_t>(a / p_);
        r += ((p_ - da) % p_) * mul;
        mul *= p_;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t FqCtx::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FqCtx::pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? from_int(1) : 0;
    std::uint64_t l = (static_cast<unsigned __int128>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[l];
}

std::uint32_t FqCtx::from_int(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r);
}

bool FqCtx::is_square(std::uint32_t a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    return log_[a] % 2 == 0;
}

std::uint64_t FqCtx::order(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("FqCtx::order: zero");
    std::uint64_t n = q_ - 1, l = log_[a];
    std::uint64_t g = std::gcd(l, n);
    return n / (g == 0 ? n : g);
}

const FqCtx& FqCtx::get(std::uint64_t p, unsigned k) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<FqCtx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<FqCtx>(p, k)).first;
    return *it->second;
}

}  // namespace shv
