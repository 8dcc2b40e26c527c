#include "shv/elliptic.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "shv/fq.hpp"
#include "shv/matrix.hpp"

namespace shv {

namespace {

// Quadratic character of v mod p; 0 on residues of p.
int chi_p(std::uint64_t v, std::uint64_t p) {
    v %= p;
    if (v == 0) return 0;
    return powmod64(v, (p - 1) / 2, p) == 1 ? 1 : -1;
}

struct BForm {
    std::uint64_t p;
    std::uint64_t b2, b4, b6;  // y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6

    std::uint64_t eval(std::uint64_t x) const {
        std::uint64_t r = mulmod64(4, mulmod64(x, mulmod64(x, x, p), p), p);
        r = (r + mulmod64(b2, mulmod64(x, x, p), p)) % p;
        r = (r + mulmod64(2, mulmod64(b4, x, p), p)) % p;
        return (r + b6) % p;
    }
};

}  // namespace

long trace_of_frobenius(const Weier<Rational>& c, std::uint64_t p, Reduction* kind) {
    if (p < 3) throw std::domain_error("trace_of_frobenius: p must be odd");
    BForm g{p, rat_mod_p(c.b2(), p), rat_mod_p(c.b4(), p), rat_mod_p(c.b6(), p)};
    std::uint64_t disc = rat_mod_p(c.disc(), p);

    if (disc != 0) {
        long sum = 0;
        for (std::uint64_t x = 0; x < p; ++x) sum += chi_p(g.eval(x), p);
        // Plain enumeration of (x, y) pairs as an independent count.
        std::uint64_t affine = 0;
        for (std::uint64_t x = 0; x < p; ++x) {
            std::uint64_t rhs = g.eval(x);
            for (std::uint64_t y = 0; y < p; ++y)
                if (mulmod64(y, y, p) == rhs) ++affine;
        }
        long a = -sum;
        if (static_cast<long>(p) + 1 - a != static_cast<long>(affine) + 1)
            throw std::logic_error("trace_of_frobenius: count mismatch");
        if (static_cast<std::uint64_t>(a) * a > 4 * p)
            throw std::logic_error("trace_of_frobenius: Weil bound violated");
        if (kind) *kind = Reduction::good;
        return a;
    }

    std::uint64_t c4 = rat_mod_p(c.c4(), p);
    if (c4 == 0) {
        if (kind) *kind = Reduction::additive;
        return 0;
    }
    // Multiplicative reduction: locate the node and test whether the tangent
    // cone y^2 = (g''(x0)/2) (x - x0)^2 splits over F_p.
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t gv = g.eval(x);
        std::uint64_t gd = (mulmod64(12, mulmod64(x, x, p), p) +
                            mulmod64(2, mulmod64(g.b2, x, p), p) + 2 * g.b4 % p) %
                           p;
        if (gv != 0 || gd != 0) continue;
        std::uint64_t half_g2 = (mulmod64(12, x, p) + g.b2) % p;
        bool split = chi_p(half_g2, p) == 1;
        if (kind) *kind = split ? Reduction::split : Reduction::nonsplit;
        return split ? 1 : -1;
    }
    throw std::logic_error("trace_of_frobenius: node not found");
}

TraceTable trace_table(const Weier<Rational>& c, std::uint64_t pmax) {
    TraceTable t;
    for (std::uint64_t p = 3; p <= pmax; ++p) {
        if (!is_prime_u64(p)) continue;
        Reduction k;
        t.a[p] = trace_of_frobenius(c, p, &k);
        t.kind[p] = k;
    }
    return t;
}

long trace_over_fq(std::uint64_t p, std::uint32_t A, std::uint32_t B) {
    const FqCtx& F = FqCtx::get(p, 2);
    long sum = 0;
    for (std::uint64_t xi = 0; xi < F.q(); ++xi) {
        std::uint32_t x = static_cast<std::uint32_t>(xi);
        std::uint32_t rhs = F.add(F.add(F.mul(x, F.mul(x, x)), F.mul(A, x)), B);
        if (rhs == 0) continue;
        sum += F.is_square(rhs) ? 1 : -1;
    }
    return -sum;
}

std::map<long, long> hecke_extend(const std::map<long, long>& ap, const std::set<long>& bad,
                                  long N) {
    std::map<long, long> a;
    a[1] = 1;
    for (long n = 2; n <= N; ++n) {
        long p = 2;
        while (n % p != 0) ++p;
        long pk = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        if (pk == n) {
            auto it = ap.find(p);
            if (it == ap.end()) throw std::invalid_argument("hecke_extend: missing seed a_p");
            if (pk == p) {
                a[n] = it->second;
            } else if (bad.count(p)) {
                a[n] = a[n / p] * it->second;
            } else {
                a[n] = it->second * a[n / p] - p * a[n / (p * p)];
            }
        } else {
            a[n] = a[pk] * a[m];
        }
    }
    return a;
}

namespace {

// Traces of y^2 = x^3 + Ax + B over F_p by character sum.
long trace_short_fp(std::uint64_t p, std::uint64_t A, std::uint64_t B) {
    long sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t rhs =
            (mulmod64(x, mulmod64(x, x, p), p) + mulmod64(A, x, p) + B) % p;
        sum += chi_p(rhs, p);
    }
    return -sum;
}

// Inverse mod an odd prime power, by the extended Euclidean algorithm.
std::uint64_t inv_mod_pk(std::uint64_t a, std::uint64_t m) {
    a %= m;
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a);
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod_pk: not invertible");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<std::uint64_t>(t);
}

// Residue of a rational mod p^K; the denominator must be prime to p.
std::uint64_t rat_mod_pk(const Rational& x, std::uint64_t m) {
    Integer n = numerator(x) % Integer(m);
    if (n < 0) n += Integer(m);
    Integer dm = denominator(x) % Integer(m);
    std::uint64_t d = dm.convert_to<std::uint64_t>();
    return mulmod64(n.convert_to<std::uint64_t>(), inv_mod_pk(d, m), m);
}

// One completion of Q(phi) at an odd unramified prime p, to precision p^K.
// In the split case phi is sent to a Hensel-lifted root of x^2 - x - 1 mod
// p^K and elements become single p-adic units times powers of p; in the
// inert case elements are tracked by their two coordinates in the basis
// {1, phi}, whose minimum valuation is the valuation of the element.
struct PhiLocal {
    std::uint64_t p = 0;
    int K = 0;
    std::uint64_t pK = 0;
    bool split = false;
    std::uint64_t root = 0;        // split: root of x^2 - x - 1 mod p^K
    const FqCtx* F = nullptr;      // inert: residue field F_{p^2}
    std::uint32_t rho = 0;         // inert: image of phi in F_{p^2}

    // In the split case `which` picks one of the two primes over p, ordered
    // by the residue of phi mod p.
    static PhiLocal at(std::uint64_t p, int which = 0) {
        PhiLocal L;
        L.p = p;
        L.K = 1;
        L.pK = p;
        while (L.pK <= (std::uint64_t(1) << 58) / p) {
            L.pK *= p;
            ++L.K;
        }
        L.split = chi_p(5 % p, p) == 1;
        if (L.split) {
            std::vector<std::uint64_t> roots;
            for (std::uint64_t v = 0; v < p; ++v)
                if ((mulmod64(v, v, p) + 2 * p - v - 1) % p == 0) roots.push_back(v);
            if (roots.size() != 2) throw std::logic_error("PhiLocal: expected two roots");
            std::uint64_t r = roots[static_cast<std::size_t>(which)];
            std::uint64_t m = p;
            while (m < L.pK) {
                m = (L.pK / m >= m) ? m * m : L.pK;
                std::uint64_t f = (mulmod64(r, r, m) + 2 * m - r % m - 1) % m;
                std::uint64_t fp = (2 * r % m + m - 1) % m;
                r = (r + m - mulmod64(f, inv_mod_pk(fp, m), m)) % m;
            }
            if ((mulmod64(r, r, L.pK) + 2 * L.pK - r - 1) % L.pK != 0)
                throw std::logic_error("PhiLocal: Hensel lift failed");
            L.root = r;
        } else {
            L.F = &FqCtx::get(p, 2);
            for (std::uint64_t xi = 1; xi < L.F->q(); ++xi) {
                std::uint32_t x = static_cast<std::uint32_t>(xi);
                if (L.F->sub(L.F->mul(x, x), L.F->add(x, L.F->from_int(1))) == 0) {
                    L.rho = x;
                    break;
                }
            }
            if (!L.rho) throw std::logic_error("PhiLocal: no residue root of x^2-x-1");
        }
        return L;
    }

    // Nonzero element stored as p^v times a unit, so valuations add
    // exactly under multiplication instead of eating precision. Split case:
    // the unit is the single coordinate a (b unused). Inert case: the unit
    // is a + b phi with at least one coordinate prime to p.
    struct Elt {
        int v = 0;
        std::uint64_t a = 0, b = 0;
    };

    Elt normalize(std::uint64_t a, std::uint64_t b) const {
        Elt e;
        if (split) {
            std::uint64_t u = (a + mulmod64(b, root, pK)) % pK;
            if (u == 0) throw std::logic_error("PhiLocal: zero or precision exhausted");
            while (u % p == 0) {
                u /= p;
                ++e.v;
            }
            e.a = u;
        } else {
            if (a == 0 && b == 0)
                throw std::logic_error("PhiLocal: zero or precision exhausted");
            while (a % p == 0 && b % p == 0) {
                a /= p;
                b /= p;
                ++e.v;
            }
            e.a = a;
            e.b = b;
        }
        return e;
    }

    Elt embed(const QuadPhi& v) const {
        return normalize(rat_mod_pk(v.a, pK), rat_mod_pk(v.b, pK));
    }
    Elt from_pair(long long a, long long b) const {
        long long m = static_cast<long long>(pK);
        a %= m;
        b %= m;
        if (a < 0) a += m;
        if (b < 0) b += m;
        return normalize(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    Elt mul(const Elt& x, const Elt& y) const {
        std::uint64_t aa = mulmod64(x.a, y.a, pK), bb = mulmod64(x.b, y.b, pK);
        std::uint64_t cross = (mulmod64(x.a, y.b, pK) + mulmod64(x.b, y.a, pK)) % pK;
        Elt e = normalize((aa + bb) % pK, (cross + bb) % pK);
        if (e.v != 0) throw std::logic_error("PhiLocal: unit product not a unit");
        e.v = x.v + y.v;
        return e;
    }

    int valuation(const Elt& x) const { return x.v; }

    // Residue of x / p^s in the residue field; zero when v(x) > s. Split:
    // an element of F_p. Inert: an index into F_{p^2}.
    std::uint64_t shift_residue(const Elt& x, int s) const {
        if (x.v < s) throw std::logic_error("shift_residue: valuation too low");
        if (x.v > s) return split ? 0 : F->from_int(0);
        if (split) return x.a % p;
        return F->add(F->from_int(x.a % p), F->mul(F->from_int(x.b % p), rho));
    }
};

// Point count for an ordinary curve over F_9 recovered from its minimal
// invariants. In characteristic 3 a curve with c4 != 0 has a unique model
// y^2 = x^3 + a2 x^2 + a6 with c4 = a2^2, c6 = -a2^3, disc = -a2^3 a6.
long trace_char3_from_invariants(const FqCtx& F, std::uint32_t c4f, std::uint32_t c6f,
                                 std::uint32_t Df) {
    if (c4f == 0) throw std::domain_error("trace_char3: supersingular invariants");
    std::uint32_t a2 = F.mul(F.sub(0, c6f), F.inv(c4f));
    if (F.mul(a2, a2) != c4f) throw std::logic_error("trace_char3: invariant mismatch");
    std::uint32_t a2c = F.mul(a2, F.mul(a2, a2));
    std::uint32_t a6 = F.mul(F.sub(0, Df), F.inv(a2c));
    long sum = 0;
    for (std::uint64_t xi = 0; xi < F.q(); ++xi) {
        std::uint32_t x = static_cast<std::uint32_t>(xi);
        std::uint32_t rhs = F.add(F.mul(x, F.mul(x, F.add(x, a2))), a6);
        if (rhs == 0) continue;
        sum += F.is_square(rhs) ? 1 : -1;
    }
    return -sum;
}

// Frobenius trace at one prime of Z[phi] for the quadratic twist by d of a
// curve with invariants (c4, c6, disc), embedded at precision p^K. The
// twisted invariants are scaled down to a local minimal model first, so a
// twist can repair additive reduction of the input model. Returns false if
// the twisted curve still has bad reduction.
bool local_twisted_trace(const PhiLocal& L, const PhiLocal::Elt& c4, const PhiLocal::Elt& c6,
                         const PhiLocal::Elt& disc, long long da, long long db, long* out,
                         std::map<std::array<std::uint64_t, 4>, long>& cache) {
    PhiLocal::Elt d = L.from_pair(da, db);
    PhiLocal::Elt d2 = L.mul(d, d), d3 = L.mul(d2, d);
    PhiLocal::Elt t4 = L.mul(c4, d2);
    PhiLocal::Elt t6 = L.mul(c6, d3);
    PhiLocal::Elt tD = L.mul(disc, L.mul(d3, d3));
    int v4 = L.valuation(t4), v6 = L.valuation(t6), vD = L.valuation(tD);
    int k = std::min(std::min(v4 / 4, v6 / 6), vD / 12);
    if (vD - 12 * k != 0) return false;
    std::uint64_t c4r = L.shift_residue(t4, 4 * k);
    std::uint64_t c6r = L.shift_residue(t6, 6 * k);
    std::uint64_t Dr = L.shift_residue(tD, 12 * k);
    std::array<std::uint64_t, 4> key{L.p, c4r, c6r, Dr};
    auto it = cache.find(key);
    if (it != cache.end()) {
        *out = it->second;
        return true;
    }
    long a;
    std::uint64_t q;
    if (L.split) {
        q = L.p;
        std::uint64_t A = mulmod64(L.p - 27 % L.p, c4r, L.p);
        std::uint64_t B = mulmod64(L.p - 54 % L.p, c6r, L.p);
        a = trace_short_fp(L.p, A, B);
    } else if (L.p == 3) {
        q = 9;
        a = trace_char3_from_invariants(*L.F, static_cast<std::uint32_t>(c4r),
                                        static_cast<std::uint32_t>(c6r),
                                        static_cast<std::uint32_t>(Dr));
    } else {
        q = L.p * L.p;
        std::uint32_t A = L.F->mul(L.F->sub(0, L.F->from_int(27)),
                                   static_cast<std::uint32_t>(c4r));
        std::uint32_t B = L.F->mul(L.F->sub(0, L.F->from_int(54)),
                                   static_cast<std::uint32_t>(c6r));
        long sum = 0;
        for (std::uint64_t xi = 0; xi < L.F->q(); ++xi) {
            std::uint32_t x = static_cast<std::uint32_t>(xi);
            std::uint32_t rhs =
                L.F->add(L.F->add(L.F->mul(x, L.F->mul(x, x)), L.F->mul(A, x)), B);
            if (rhs == 0) continue;
            sum += L.F->is_square(rhs) ? 1 : -1;
        }
        a = -sum;
    }
    if (static_cast<double>(a) * a > 4.0 * static_cast<double>(q))
        throw std::logic_error("local_twisted_trace: Weil bound violated");
    cache[key] = a;
    *out = a;
    return true;
}

}  // namespace

HilbertMatch hilbert_trace_match(const QuadPhi& j, const std::vector<HilbertEigen>& target,
                                 int bound) {
    QuadPhi kk = QuadPhi(1728) - j;
    QuadPhi A = QuadPhi(3) * j * kk;
    QuadPhi B = QuadPhi(2) * j * kk * kk;
    QuadPhi c4 = QuadPhi(-48) * A;
    QuadPhi c6 = QuadPhi(-864) * B;
    QuadPhi disc = QuadPhi(-16) * (QuadPhi(4) * A * A * A + QuadPhi(27) * B * B);

    struct SplitRow {
        long p;
        PhiLocal L1, L2;
        PhiLocal::Elt c41, c61, D1, c42, c62, D2;
        long t1, t2;
    };
    struct InertRow {
        long p;
        PhiLocal L;
        PhiLocal::Elt c4e, c6e, De;
        long t;
    };
    std::vector<SplitRow> split;
    std::vector<InertRow> inert;

    for (const auto& row : target) {
        std::uint64_t p = static_cast<std::uint64_t>(row.p);
        if (p < 3 || p == 5) throw std::domain_error("hilbert_trace_match: unsupported prime");
        bool splits = chi_p(5 % p, p) == 1;
        if (splits != (row.a.size() == 2))
            throw std::invalid_argument("hilbert_trace_match: row shape vs splitting");
        if (splits) {
            SplitRow r;
            r.p = row.p;
            r.L1 = PhiLocal::at(p, 0);
            r.L2 = PhiLocal::at(p, 1);
            r.c41 = r.L1.embed(c4);
            r.c61 = r.L1.embed(c6);
            r.D1 = r.L1.embed(disc);
            r.c42 = r.L2.embed(c4);
            r.c62 = r.L2.embed(c6);
            r.D2 = r.L2.embed(disc);
            r.t1 = row.a[0];
            r.t2 = row.a[1];
            split.push_back(std::move(r));
        } else {
            InertRow r;
            r.p = row.p;
            r.L = PhiLocal::at(p);
            r.c4e = r.L.embed(c4);
            r.c6e = r.L.embed(c6);
            r.De = r.L.embed(disc);
            r.t = row.a[0];
            inert.push_back(std::move(r));
        }
    }

    std::map<std::array<std::uint64_t, 4>, long> cache;
    HilbertMatch best;
    for (int da = -bound; da <= bound; ++da) {
        for (int db = -bound; db <= bound; ++db) {
            if (da == 0 && db == 0) continue;
            int matched = 0;
            std::map<long, bool> align;
            for (const auto& r : split) {
                long a1, a2;
                if (!local_twisted_trace(r.L1, r.c41, r.c61, r.D1, da, db, &a1, cache))
                    continue;
                if (!local_twisted_trace(r.L2, r.c42, r.c62, r.D2, da, db, &a2, cache))
                    continue;
                if (a1 == r.t1 && a2 == r.t2) {
                    align[r.p] = true;
                    ++matched;
                } else if (a1 == r.t2 && a2 == r.t1) {
                    align[r.p] = false;
                    ++matched;
                }
            }
            for (const auto& r : inert) {
                long a;
                if (!local_twisted_trace(r.L, r.c4e, r.c6e, r.De, da, db, &a, cache))
                    continue;
                if (a == r.t) ++matched;
            }
            if (matched > best.primes_matched) {
                best.primes_matched = matched;
                best.d_a = da;
                best.d_b = db;
                best.alignment = align;
                best.found = matched == static_cast<int>(split.size() + inert.size());
            }
            if (best.found) return best;
        }
    }
    return best;
}

KodairaType kodaira_from_valuations(long vc4, long vc6, long vdelta) {
    while (vc4 >= 4 && vdelta >= 12) {
        vc4 -= 4;
        vc6 -= 6;
        vdelta -= 12;
    }
    KodairaType k;
    auto fiber = [&](std::string name, int n, int comp, int euler) {
        k.name = std::move(name);
        k.n = n;
        k.components = comp;
        k.euler = euler;
        return k;
    };
    if (vdelta == 0) return fiber("I0", 0, 1, 0);
    if (vc4 == 0)
        return fiber("I" + std::to_string(vdelta), static_cast<int>(vdelta),
                     vdelta == 1 ? 1 : static_cast<int>(vdelta), static_cast<int>(vdelta));
    if (vc4 == 2 && vdelta >= 7) {
        if (vc6 != 3) throw std::logic_error("kodaira: inconsistent valuations");
        long n = vdelta - 6;
        return fiber("I" + std::to_string(n) + "*", static_cast<int>(n),
                     static_cast<int>(5 + n), static_cast<int>(6 + n));
    }
    switch (vdelta) {
        case 2: return fiber("II", 0, 1, 2);
        case 3: return fiber("III", 0, 2, 3);
        case 4: return fiber("IV", 0, 3, 4);
        case 6: return fiber("I0*", 0, 5, 6);
        case 8: return fiber("IV*", 0, 7, 8);
        case 9: return fiber("III*", 0, 8, 9);
        case 10: return fiber("II*", 0, 9, 10);
        default: throw std::logic_error("kodaira: unclassifiable valuations");
    }
}

namespace {

constexpr long kValInfinity = 1 << 20;

long poly_val_at(const UPoly<Rational>& f, const Rational& t0) {
    if (f.is_zero()) return kValInfinity;
    UPoly<Rational> g = f;
    UPoly<Rational> lin(std::vector<Rational>{-t0, Rational(1)});
    long v = 0;
    while (g.eval(t0) == 0) {
        g = g / lin;
        ++v;
    }
    return v;
}

UPoly<Rational> frac_poly(const RatFunc& f, const char* what) {
    if (!f.is_polynomial()) throw std::domain_error(std::string(what) + ": not polynomial");
    return f.poly();
}

KodairaType kodaira_at(const Weier<RatFunc>& c, const Rational& t0) {
    UPoly<Rational> C4 = frac_poly(c.c4(), "tate_kodaira c4");
    UPoly<Rational> C6 = frac_poly(c.c6(), "tate_kodaira c6");
    UPoly<Rational> D = frac_poly(c.disc(), "tate_kodaira disc");
    if (D.is_zero()) throw std::domain_error("tate_kodaira: singular model");
    return kodaira_from_valuations(poly_val_at(C4, t0), poly_val_at(C6, t0),
                                   poly_val_at(D, t0));
}

// Model at infinity: a_i(t) -> t^{w_i m} a_i(1/t) with weights 1,2,3,4,6 and
// the least m making every coefficient polynomial.
Weier<RatFunc> infinity_model(const Weier<RatFunc>& c) {
    const int w[5] = {1, 2, 3, 4, 6};
    UPoly<Rational> ai[5] = {frac_poly(c.a1, "a1"), frac_poly(c.a2, "a2"),
                             frac_poly(c.a3, "a3"), frac_poly(c.a4, "a4"),
                             frac_poly(c.a6, "a6")};
    int m = 0;
    for (int i = 0; i < 5; ++i)
        if (!ai[i].is_zero()) m = std::max(m, (ai[i].degree() + w[i] - 1) / w[i]);
    Weier<RatFunc> out;
    RatFunc* slot[5] = {&out.a1, &out.a2, &out.a3, &out.a4, &out.a6};
    for (int i = 0; i < 5; ++i)
        *slot[i] = ai[i].is_zero()
                       ? RatFunc()
                       : RatFunc(ai[i].reversed(static_cast<std::size_t>(w[i] * m)));
    return out;
}

// Part of f whose roots have multiplicity >= k.
UPoly<Rational> multiplicity_at_least(UPoly<Rational> f, int k) {
    for (int i = 1; i < k; ++i) f = UPoly<Rational>::gcd(f, f.derivative());
    return f;
}

}  // namespace

KodairaType tate_kodaira(const Weier<RatFunc>& c, const Rational& t0) {
    return kodaira_at(c, t0);
}

KodairaType tate_kodaira_infinity(const Weier<RatFunc>& c) {
    return kodaira_at(infinity_model(c), Rational(0));
}

long euler_number_total(const Weier<RatFunc>& c) {
    UPoly<Rational> C4 = frac_poly(c.c4(), "euler c4");
    UPoly<Rational> D = frac_poly(c.disc(), "euler disc");
    if (D.is_zero()) throw std::domain_error("euler_number_total: singular model");
    if (!C4.is_zero()) {
        UPoly<Rational> g =
            UPoly<Rational>::gcd(multiplicity_at_least(C4, 4), multiplicity_at_least(D, 12));
        if (g.degree() > 0)
            throw std::logic_error("euler_number_total: model not minimal at a finite place");
    } else if (!multiplicity_at_least(D, 12).is_zero() &&
               multiplicity_at_least(D, 12).degree() > 0) {
        throw std::logic_error("euler_number_total: model not minimal at a finite place");
    }
    return D.degree() + tate_kodaira_infinity(c).euler;
}

RatFunc PlaneCubic::eval(const RatFunc& X, const RatFunc& Y) const {
    RatFunc r;
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; i + j <= 3; ++j) {
            if (c[i][j].is_zero()) continue;
            r = r + c[i][j] * X.pow(i) * Y.pow(j);
        }
    return r;
}

namespace {

// Laurent polynomial u^off * p(u) over K = Q(t); all the function-field
// elements met below have poles only along u = 0, so this avoids a nested
// fraction field entirely.
struct Laurent {
    UPoly<RatFunc> p;
    int off = 0;

    static Laurent of(UPoly<RatFunc> q, int off = 0) {
        Laurent l{std::move(q), off};
        l.trim();
        return l;
    }
    void trim() {
        if (p.is_zero()) {
            off = 0;
            return;
        }
        std::size_t low = 0;
        const auto& c = p.coeffs();
        while (low < c.size() && c[low].is_zero()) ++low;
        if (low) {
            std::vector<RatFunc> shifted(c.begin() + static_cast<long>(low), c.end());
            p = UPoly<RatFunc>(std::move(shifted));
            off += static_cast<int>(low);
        }
    }
    bool is_zero() const { return p.is_zero(); }
};

Laurent lp_add(const Laurent& x, const Laurent& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    int off = std::min(x.off, y.off);
    auto lift = [off](const Laurent& l) {
        std::vector<RatFunc> v(static_cast<std::size_t>(l.off - off), RatFunc());
        for (const auto& c : l.p.coeffs()) v.push_back(c);
        return UPoly<RatFunc>(std::move(v));
    };
    return Laurent::of(lift(x) + lift(y), off);
}

Laurent lp_mul(const Laurent& x, const Laurent& y) {
    if (x.is_zero() || y.is_zero()) return Laurent();
    return Laurent::of(x.p * y.p, x.off + y.off);
}

Laurent lp_scale(const RatFunc& s, const Laurent& x) {
    if (s.is_zero()) return Laurent();
    return Laurent::of(s * x.p, x.off);
}

// Element c0 + c1 v of K(u)[v] / (v^2 - D(u)).
struct QuadExt {
    Laurent c0, c1;
};

QuadExt qe_add(const QuadExt& x, const QuadExt& y) {
    return {lp_add(x.c0, y.c0), lp_add(x.c1, y.c1)};
}

QuadExt qe_mul(const QuadExt& x, const QuadExt& y, const Laurent& D) {
    return {lp_add(lp_mul(x.c0, y.c0), lp_mul(lp_mul(x.c1, y.c1), D)),
            lp_add(lp_mul(x.c0, y.c1), lp_mul(x.c1, y.c0))};
}

QuadExt qe_scale(const RatFunc& s, const QuadExt& x) {
    return {lp_scale(s, x.c0), lp_scale(s, x.c1)};
}

}  // namespace

Weier<RatFunc> nagell_weierstrass(const PlaneCubic& F) {
    PlaneCubic G = F;
    if (!G.c[0][0].is_zero())
        throw std::invalid_argument("nagell_weierstrass: base point not on the cubic");
    if (G.c[0][1].is_zero()) {
        // Swap the roles of X and Y so the tangent at the origin has a slope.
        PlaneCubic T;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j) T.c[i][j] = G.c[j][i];
        G = T;
        if (G.c[0][1].is_zero())
            throw std::invalid_argument("nagell_weierstrass: base point is singular");
    }

    using K = RatFunc;
    // F(X, mX) = X (A(m) + B(m) X + C(m) X^2).
    UPoly<K> Am(std::vector<K>{G.c[1][0], G.c[0][1]});
    UPoly<K> Bm(std::vector<K>{G.c[2][0], G.c[1][1], G.c[0][2]});
    UPoly<K> Cm(std::vector<K>{G.c[3][0], G.c[2][1], G.c[1][2], G.c[0][3]});

    K m0 = -G.c[1][0] / G.c[0][1];
    UPoly<K> D = Bm * Bm - K(4) * (Am * Cm);
    UPoly<K> Ds = D.shifted(m0);
    K q = Bm.eval(m0);
    if (!(Ds[0] == q * q)) throw std::logic_error("nagell_weierstrass: tangent shift failed");
    if (q.is_zero())
        throw std::invalid_argument("nagell_weierstrass: base point is an inflection point");
    K d1 = Ds[1];

    Laurent Delem = Laurent::of(Ds);

    // x = (2q(v + q) + d1 u) / u^2 and
    // y = (4q^2(v + q) + 2q d1 u + (2q d2 - d1^2/(2q)) u^2) / u^3 have poles
    // of order 2 and 3 at the rational point (u, v) = (0, q) and are regular
    // everywhere else, so together with 1 they satisfy one monic Weierstrass
    // relation.
    K d2 = Ds[2];
    QuadExt x{Laurent::of(UPoly<K>(std::vector<K>{K(2) * q * q, d1}), -2),
              Laurent::of(UPoly<K>::constant(K(2) * q), -2)};
    QuadExt y{Laurent::of(UPoly<K>(std::vector<K>{K(4) * q * q * q, K(2) * q * d1,
                                                  K(2) * q * d2 - d1 * d1 / (K(2) * q)}),
                          -3),
              Laurent::of(UPoly<K>::constant(K(4) * q * q), -3)};

    QuadExt one{Laurent::of(UPoly<K>::constant(K(1))), Laurent()};
    QuadExt x2 = qe_mul(x, x, Delem);
    QuadExt x3 = qe_mul(x2, x, Delem);
    QuadExt y2 = qe_mul(y, y, Delem);
    QuadExt xy = qe_mul(x, y, Delem);
    QuadExt lhs0 = qe_add(y2, qe_scale(K(-1), x3));  // known part

    // Unknown columns: a1 (xy), a3 (y), -a2 (x^2), -a4 (x), -a6 (1).
    const QuadExt cols[5] = {xy, y, qe_scale(K(-1), x2), qe_scale(K(-1), x),
                             qe_scale(K(-1), one)};

    auto polyize = [](const Laurent& l) {
        if (l.is_zero()) return UPoly<K>();
        if (l.off < -6)
            throw std::logic_error("nagell_weierstrass: pole order exceeds 6");
        std::vector<K> v(static_cast<std::size_t>(l.off + 6), K());
        for (const auto& c : l.p.coeffs()) v.push_back(c);
        return UPoly<K>(std::move(v));
    };

    UPoly<K> rhs_p[2] = {polyize(lhs0.c0), polyize(lhs0.c1)};
    UPoly<K> col_p[5][2];
    int maxdeg = std::max(rhs_p[0].degree(), rhs_p[1].degree());
    for (int k = 0; k < 5; ++k) {
        col_p[k][0] = polyize(cols[k].c0);
        col_p[k][1] = polyize(cols[k].c1);
        maxdeg = std::max({maxdeg, col_p[k][0].degree(), col_p[k][1].degree()});
    }

    int rows = 2 * (maxdeg + 1);
    Matrix<K> M(rows, 5);
    std::vector<K> rhs(rows);
    for (int comp = 0; comp < 2; ++comp)
        for (int deg = 0; deg <= maxdeg; ++deg) {
            int row = comp * (maxdeg + 1) + deg;
            for (int k = 0; k < 5; ++k)
                M(row, k) = col_p[k][comp][static_cast<std::size_t>(deg)];
            rhs[row] = K() - rhs_p[comp][static_cast<std::size_t>(deg)];
        }
    std::vector<K> sol;
    if (!M.solve(rhs, sol))
        throw std::logic_error("nagell_weierstrass: no Weierstrass relation found");

    Weier<RatFunc> out;
    out.a1 = sol[0];
    out.a3 = sol[1];
    out.a2 = sol[2];
    out.a4 = sol[3];
    out.a6 = sol[4];

    // Exact verification of the relation in the function field.
    QuadExt check = lhs0;
    const K* vals[5] = {&out.a1, &out.a3, &out.a2, &out.a4, &out.a6};
    for (int k = 0; k < 5; ++k) check = qe_add(check, qe_scale(*vals[k], cols[k]));
    if (!check.c0.is_zero() || !check.c1.is_zero())
        throw std::logic_error("nagell_weierstrass: verification failed");
    return out;
}

namespace {

bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    Integer n = numerator(r), d = denominator(r);
    Integer sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rational(sn) / Rational(sd);
    return true;
}

bool upoly_sqrt(const UPoly<Rational>& f, UPoly<Rational>& out) {
    if (f.is_zero()) {
        out = UPoly<Rational>();
        return true;
    }
    if (f.degree() % 2 != 0) return false;
    Rational sl;
    if (!rational_sqrt(f.leading(), sl)) return false;
    int n = f.degree() / 2;
    UPoly<Rational> f1 = f.monic();
    std::vector<Rational> b(static_cast<std::size_t>(n) + 1);
    b[static_cast<std::size_t>(n)] = 1;
    for (int i = n - 1; i >= 0; --i) {
        Rational acc = f1[static_cast<std::size_t>(n + i)];
        for (int j = i + 1; j <= n; ++j) {
            int k = n + i - j;
            if (k <= i || k > n) continue;
            acc -= b[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k)];
        }
        b[static_cast<std::size_t>(i)] = acc / 2;
    }
    UPoly<Rational> g(std::move(b));
    if (!(g * g == f1)) return false;
    out = sl * g;
    return true;
}

bool ratfunc_sqrt(const RatFunc& f, RatFunc& out) {
    UPoly<Rational> n, d;
    if (!upoly_sqrt(f.num, n) || !upoly_sqrt(f.den, d)) return false;
    out = RatFunc(n, d);
    return true;
}

}  // namespace

WeierTransform weierstrass_equiv_search(const Weier<RatFunc>& A, const Weier<RatFunc>& B) {
    WeierTransform res;
    RatFunc c4A = A.c4(), c6A = A.c6(), c4B = B.c4(), c6B = B.c6();
    if (c4A.is_zero() || c6A.is_zero() || c4B.is_zero() || c6B.is_zero())
        throw std::domain_error("weierstrass_equiv_search: j = 0 or 1728 unsupported");
    RatFunc u2 = (c6A * c4B) / (c6B * c4A);
    RatFunc u0;
    if (!ratfunc_sqrt(u2, u0)) return res;

    const RatFunc two(2), three(3);
    for (int sign = 0; sign < 2; ++sign) {
        RatFunc u = sign ? -u0 : u0;
        RatFunc s = (u * B.a1 - A.a1) / two;
        RatFunc r = (u * u * B.a2 - A.a2 + s * A.a1 + s * s) / three;
        RatFunc w = (u.pow(3) * B.a3 - A.a3 - r * A.a1) / two;
        RatFunc a4p = (A.a4 - s * A.a3 + two * r * A.a2 - (w + r * s) * A.a1 +
                       three * r * r - two * s * w) /
                      u.pow(4);
        RatFunc a6p = (A.a6 + r * A.a4 + r * r * A.a2 + r.pow(3) - w * A.a3 - w * w -
                       r * w * A.a1) /
                      u.pow(6);
        if (a4p == B.a4 && a6p == B.a6) {
            RatFunc a1p = (A.a1 + two * s) / u;
            RatFunc a2p = (A.a2 - s * A.a1 + three * r - s * s) / (u * u);
            RatFunc a3p = (A.a3 + r * A.a1 + two * w) / u.pow(3);
            if (a1p == B.a1 && a2p == B.a2 && a3p == B.a3) {
                res.found = true;
                res.u = u;
                res.r = r;
                res.s = s;
                res.w = w;
                return res;
            }
        }
    }
    return res;
}

}  // namespace shv
