// Weierstrass models over Q, Q(phi), finite fields, and Q(t).
//
// The templated core covers invariants, the group law, quadratic twists,
// Velu isogenies, and the Legendre j-map over any field of characteristic
// not 2 or 3. Frobenius traces, Hecke extension of newform coefficients,
// Hilbert eigenvalue matching over Q(sqrt 5), Kodaira fiber types over Q(t),
// and the cubic-to-Weierstrass reductions live in elliptic.cpp.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shv/ratfunc.hpp"
#include "shv/rational.hpp"

namespace shv {

using RatFunc = Frac<Rational>;

// Element a + b*phi of Q(sqrt 5), with phi the golden ratio, phi^2 = phi + 1.
struct QuadPhi {
    Rational a, b;

    QuadPhi() = default;
    explicit QuadPhi(int c) : a(c) {}
    explicit QuadPhi(Rational ra) : a(std::move(ra)) {}
    QuadPhi(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    // Image of sqrt 5 = 2*phi - 1.
    static QuadPhi sqrt5() { return QuadPhi(Rational(-1), Rational(2)); }

    QuadPhi conj() const { return QuadPhi(a + b, -b); }
    Rational norm() const { return a * a + a * b - b * b; }
    bool is_zero() const { return a == 0 && b == 0; }

    friend QuadPhi operator+(const QuadPhi& x, const QuadPhi& y) {
        return QuadPhi(x.a + y.a, x.b + y.b);
    }
    friend QuadPhi operator-(const QuadPhi& x, const QuadPhi& y) {
        return QuadPhi(x.a - y.a, x.b - y.b);
    }
    friend QuadPhi operator*(const QuadPhi& x, const QuadPhi& y) {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        return QuadPhi(x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b);
    }
    QuadPhi inverse() const {
        Rational n = norm();
        if (n == 0) throw std::domain_error("QuadPhi: inverse of zero");
        QuadPhi c = conj();
        return QuadPhi(c.a / n, c.b / n);
    }
    friend QuadPhi operator/(const QuadPhi& x, const QuadPhi& y) { return x * y.inverse(); }
    QuadPhi operator-() const { return QuadPhi(-a, -b); }
    friend bool operator==(const QuadPhi& x, const QuadPhi& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadPhi& x, const QuadPhi& y) { return !(x == y); }
};

// Long Weierstrass form y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
template <typename K>
struct Weier {
    K a1{}, a2{}, a3{}, a4{}, a6{};

    K b2() const { return a1 * a1 + K(4) * a2; }
    K b4() const { return K(2) * a4 + a1 * a3; }
    K b6() const { return a3 * a3 + K(4) * a6; }
    K b8() const {
        return a1 * a1 * a6 + K(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    K c4() const {
        K B2 = b2();
        return B2 * B2 - K(24) * b4();
    }
    K c6() const {
        K B2 = b2();
        return -(B2 * B2 * B2) + K(36) * B2 * b4() - K(216) * b6();
    }
    K disc() const {
        K B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -(B2 * B2) * B8 - K(8) * B4 * B4 * B4 - K(27) * B6 * B6 + K(9) * B2 * B4 * B6;
    }
    K j() const {
        K C4 = c4();
        return C4 * C4 * C4 / disc();
    }

    // Model y^2 = x^3 - 27 c4 x - 54 c6, reached by (x, y) ->
    // (36 x + 3 b2, 108 (2y + a1 x + a3)).
    Weier short_model() const {
        Weier s;
        s.a4 = K(-27) * c4();
        s.a6 = K(-54) * c6();
        return s;
    }
};

template <typename K>
struct ECPoint {
    bool infinity = true;
    K x{}, y{};

    static ECPoint at_infinity() { return ECPoint(); }
    static ECPoint affine(K px, K py) {
        ECPoint P;
        P.infinity = false;
        P.x = std::move(px);
        P.y = std::move(py);
        return P;
    }
    friend bool operator==(const ECPoint& P, const ECPoint& Q) {
        if (P.infinity || Q.infinity) return P.infinity == Q.infinity;
        return P.x == Q.x && P.y == Q.y;
    }
};

template <typename K>
bool on_curve(const Weier<K>& c, const ECPoint<K>& P) {
    if (P.infinity) return true;
    K lhs = P.y * P.y + c.a1 * P.x * P.y + c.a3 * P.y;
    K rhs = P.x * P.x * P.x + c.a2 * P.x * P.x + c.a4 * P.x + c.a6;
    return lhs == rhs;
}

template <typename K>
ECPoint<K> ec_neg(const Weier<K>& c, const ECPoint<K>& P) {
    if (P.infinity) return P;
    return ECPoint<K>::affine(P.x, -P.y - c.a1 * P.x - c.a3);
}

template <typename K>
ECPoint<K> ec_add(const Weier<K>& c, const ECPoint<K>& P, const ECPoint<K>& Q) {
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    K lambda, nu;
    if (P.x == Q.x) {
        if (Q.y == -P.y - c.a1 * P.x - c.a3) return ECPoint<K>::at_infinity();
        K den = K(2) * P.y + c.a1 * P.x + c.a3;
        lambda = (K(3) * P.x * P.x + K(2) * c.a2 * P.x + c.a4 - c.a1 * P.y) / den;
        nu = (-(P.x * P.x * P.x) + c.a4 * P.x + K(2) * c.a6 - c.a3 * P.y) / den;
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
        nu = P.y - lambda * P.x;
    }
    K x3 = lambda * lambda + c.a1 * lambda - c.a2 - P.x - Q.x;
    K y3 = -(lambda + c.a1) * x3 - nu - c.a3;
    return ECPoint<K>::affine(x3, y3);
}

template <typename K>
ECPoint<K> ec_mul(const Weier<K>& c, long n, ECPoint<K> P) {
    if (n < 0) {
        n = -n;
        P = ec_neg(c, P);
    }
    ECPoint<K> R = ECPoint<K>::at_infinity();
    while (n) {
        if (n & 1) R = ec_add(c, R, P);
        if (n >>= 1) P = ec_add(c, P, P);
    }
    return R;
}

// Exact additive order, or 0 when the order exceeds the bound.
template <typename K>
long point_order(const Weier<K>& c, const ECPoint<K>& P, long bound) {
    if (!on_curve(c, P)) throw std::invalid_argument("point_order: point not on curve");
    ECPoint<K> R = P;
    for (long k = 1; k <= bound; ++k) {
        if (R.infinity) return k;
        R = ec_add(c, R, P);
    }
    return 0;
}

// Image of an affine point in the short model of short_model().
template <typename K>
ECPoint<K> short_point(const Weier<K>& c, const ECPoint<K>& P) {
    if (P.infinity) return P;
    return ECPoint<K>::affine(K(36) * P.x + K(3) * c.b2(),
                              K(108) * (K(2) * P.y + c.a1 * P.x + c.a3));
}

// Twist of the short model by d: same j, traces scaled by the quadratic
// character of d.
template <typename K>
Weier<K> quadratic_twist(const Weier<K>& c, const K& d) {
    Weier<K> s = c.short_model();
    Weier<K> t;
    t.a4 = s.a4 * d * d;
    t.a6 = s.a6 * d * d * d;
    return t;
}

// j of the double cover of the line branched over 0, 1, infinity, lambda.
template <typename K>
K legendre_j(const K& lambda) {
    K num = lambda * lambda - lambda + K(1);
    K den = lambda * lambda * (lambda - K(1)) * (lambda - K(1));
    return K(256) * num * num * num / den;
}

// Quotient by the cyclic kernel generated by P (exact order n), composed
// from prime-degree Velu steps taken in the order given by ells (default:
// ascending). Returns the codomain in short form.
template <typename K>
Weier<K> velu_isogeny(const Weier<K>& c, const ECPoint<K>& P, long n,
                      std::vector<long> ells = {}) {
    if (!on_curve(c, P)) throw std::invalid_argument("velu_isogeny: point not on curve");
    Weier<K> cur = c.short_model();
    if (n <= 1) return cur;
    if (point_order(c, P, n) != n)
        throw std::invalid_argument("velu_isogeny: generator order mismatch");

    if (ells.empty()) {
        long m = n;
        for (long ell = 2; ell * ell <= m; ++ell)
            while (m % ell == 0) {
                ells.push_back(ell);
                m /= ell;
            }
        if (m > 1) ells.push_back(m);
    }
    {
        long prod = 1;
        for (long ell : ells) prod *= ell;
        if (prod != n) throw std::invalid_argument("velu_isogeny: bad prime factor list");
    }

    // x-coordinates of the images of kP, k = 1..n-1, updated through each step.
    std::vector<K> xs(n);
    {
        ECPoint<K> R = short_point(c, P);
        ECPoint<K> Pk = R;
        for (long k = 1; k < n; ++k) {
            xs[k] = Pk.x;
            Pk = ec_add(cur, Pk, R);
        }
        if (!Pk.infinity) throw std::logic_error("velu_isogeny: order bookkeeping failed");
    }

    K A = cur.a4, B = cur.a6;
    long rem = n;
    for (long ell : ells) {
        K tsum{}, wsum{};
        std::vector<K> kx, kt, ku;  // kernel x, Velu t and u per representative
        if (ell == 2) {
            K x0 = xs[rem / 2];
            K t = K(3) * x0 * x0 + A;
            kx.push_back(x0);
            kt.push_back(t);
            ku.push_back(K{});
            tsum = t;
            wsum = x0 * t;
        } else {
            for (long jrep = 1; jrep <= (ell - 1) / 2; ++jrep) {
                K xq = xs[jrep * (rem / ell)];
                K t = K(6) * xq * xq + K(2) * A;
                K u = K(4) * (xq * xq * xq + A * xq + B);
                kx.push_back(xq);
                kt.push_back(t);
                ku.push_back(u);
                tsum = tsum + t;
                wsum = wsum + u + xq * t;
            }
        }
        K Anew = A - K(5) * tsum;
        K Bnew = B - K(7) * wsum;

        auto xmap = [&](const K& x) {
            K r = x;
            for (std::size_t i = 0; i < kx.size(); ++i) {
                K d = x - kx[i];
                r = r + kt[i] / d;
                if (!(ku[i] == K{})) r = r + ku[i] / (d * d);
            }
            return r;
        };
        long next = rem / ell;
        std::vector<K> nxs(next);
        for (long k = 1; k < next; ++k) nxs[k] = xmap(xs[k]);
        xs = std::move(nxs);
        rem = next;
        A = Anew;
        B = Bnew;
    }

    Weier<K> out;
    out.a4 = A;
    out.a6 = B;
    return out;
}

// ---------------------------------------------------------------------------
// Non-template layer (elliptic.cpp)

enum class Reduction { good, split, nonsplit, additive };

struct TraceTable {
    std::map<std::uint64_t, long> a;
    std::map<std::uint64_t, Reduction> kind;
};

// Frobenius trace at an odd prime, by point enumeration with a
// quadratic-character cross-check; bad reduction gives +-1 or 0.
long trace_of_frobenius(const Weier<Rational>& c, std::uint64_t p, Reduction* kind = nullptr);

TraceTable trace_table(const Weier<Rational>& c, std::uint64_t pmax);

// Trace of y^2 = x^3 + Ax + B over F_{p^2}; A and B are element indices of
// the shared field context.
long trace_over_fq(std::uint64_t p, std::uint32_t A, std::uint32_t B);

// Extends prime-indexed Hecke eigenvalues to all indices up to N by
// multiplicativity and the good/bad recursions.
std::map<long, long> hecke_extend(const std::map<long, long>& ap,
                                  const std::set<long>& bad, long N);

// One row of an eigenvalue table over Q(sqrt 5): a single value at an inert
// prime, an unordered pair at a split prime.
struct HilbertEigen {
    long p = 0;
    std::vector<long> a;
};

struct HilbertMatch {
    bool found = false;
    long d_a = 0, d_b = 0;  // twist d = d_a + d_b * phi
    int primes_matched = 0;
    // Per split prime: true when the listed pair aligns with the embedding
    // sending phi to the smaller root mod p.
    std::map<long, bool> alignment;
};

// Builds a curve with the given j over Q(phi) and searches quadratic twists
// d = d_a + d_b*phi with |d_a|, |d_b| <= bound whose Frobenius traces
// reproduce the target at every listed odd prime.
HilbertMatch hilbert_trace_match(const QuadPhi& j, const std::vector<HilbertEigen>& target,
                                 int bound);

struct KodairaType {
    std::string name;  // "I0", "I6", "I1*", "II*", ...
    int n = 0;         // index for I_n and I_n*
    int components = 1;
    int euler = 0;
};

KodairaType kodaira_from_valuations(long vc4, long vc6, long vdelta);

// Fiber type of a curve with polynomial coefficients in t, at t = t0 or at
// the place at infinity.
KodairaType tate_kodaira(const Weier<RatFunc>& c, const Rational& t0);
KodairaType tate_kodaira_infinity(const Weier<RatFunc>& c);

// Sum of local Euler numbers over every place, infinity included; the model
// must be minimal at all finite places.
long euler_number_total(const Weier<RatFunc>& c);

// Plane cubic sum c[i][j] X^i Y^j = 0 over Q(t), with i + j <= 3.
struct PlaneCubic {
    RatFunc c[4][4];
    RatFunc eval(const RatFunc& X, const RatFunc& Y) const;
};

// Birational reduction of a cubic through its smooth point (0, 0) to a long
// Weierstrass model; the result is verified by exact substitution.
Weier<RatFunc> nagell_weierstrass(const PlaneCubic& F);

struct WeierTransform {
    bool found = false;
    RatFunc u, r, s, w;
};

// Searches the admissible change of variables x -> u^2 x' + r,
// y -> u^3 y' + s u^2 x' + w carrying modelA onto modelB.
WeierTransform weierstrass_equiv_search(const Weier<RatFunc>& A, const Weier<RatFunc>& B);

}  // namespace shv
