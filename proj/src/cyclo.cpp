#include "shv/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shv/upoly.hpp"

namespace shv {

namespace {

// Phi_20 as a dense coefficient vector: z^8 - z^6 + z^4 - z^2 + 1.
UPoly<Rational> phi20_poly() {
    std::vector<Rational> c(9, Rational(0));
    c[0] = 1; c[2] = -1; c[4] = 1; c[6] = -1; c[8] = 1;
    return UPoly<Rational>(std::move(c));
}

// Power basis table of z^k for k = 0..19 (z^10 = -1 closes the cycle).
const std::array<Cyclo, 20>& zeta_powers() {
    static const std::array<Cyclo, 20> table = [] {
        std::array<Cyclo, 20> t;
        std::array<Rational, Cyclo::kDegree> acc{};
        acc[0] = 1;
        t[0] = Cyclo(acc);
        for (int k = 1; k < 20; ++k) t[k] = t[k - 1] * Cyclo::zeta20();
        return t;
    }();
    return table;
}

}  // namespace

Cyclo Cyclo::zeta20() {
    std::array<Rational, kDegree> c{};
    c[1] = 1;
    return Cyclo(c);
}

Cyclo Cyclo::zeta20_pow(int k) {
    k %= 20;
    if (k < 0) k += 20;
    return zeta_powers()[k];
}

Cyclo Cyclo::i() { return zeta20_pow(5); }
Cyclo Cyclo::zeta5() { return zeta20_pow(4); }
Cyclo Cyclo::zeta5_pow(int k) {
    k %= 5;
    if (k < 0) k += 5;
    return zeta20_pow(4 * k);
}
Cyclo Cyclo::eta() { return zeta5() + zeta5_pow(4); }
Cyclo Cyclo::sqrt5() { return Cyclo(2) * eta() + Cyclo(1); }
Cyclo Cyclo::delta() { return zeta5() - zeta5_pow(4); }
Cyclo Cyclo::alpha() { return zeta5_pow(3) + zeta5_pow(2) - Cyclo(1); }
Cyclo Cyclo::phi() { return (Cyclo(1) + sqrt5()) / Cyclo(2); }

bool Cyclo::is_zero() const {
    for (const auto& v : c_)
        if (v != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (int k = 1; k < kDegree; ++k)
        if (c_[k] != 0) return false;
    return true;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
    std::array<Rational, Cyclo::kDegree> r;
    for (int k = 0; k < Cyclo::kDegree; ++k) r[k] = a.c_[k] + b.c_[k];
    return Cyclo(r);
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) {
    std::array<Rational, Cyclo::kDegree> r;
    for (int k = 0; k < Cyclo::kDegree; ++k) r[k] = a.c_[k] - b.c_[k];
    return Cyclo(r);
}

Cyclo Cyclo::operator-() const {
    std::array<Rational, kDegree> r;
    for (int k = 0; k < kDegree; ++k) r[k] = -c_[k];
    return Cyclo(r);
}

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    // Schoolbook product followed by reduction with z^8 = z^6 - z^4 + z^2 - 1.
    std::array<Rational, 15> t{};
    for (int i = 0; i < Cyclo::kDegree; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < Cyclo::kDegree; ++j) {
            if (b.c_[j] == 0) continue;
            t[i + j] += a.c_[i] * b.c_[j];
        }
    }
    for (int d = 14; d >= Cyclo::kDegree; --d) {
        if (t[d] == 0) continue;
        t[d - 2] += t[d];
        t[d - 4] -= t[d];
        t[d - 6] += t[d];
        t[d - 8] -= t[d];
        t[d] = 0;
    }
    std::array<Rational, Cyclo::kDegree> r;
    for (int k = 0; k < Cyclo::kDegree; ++k) r[k] = t[k];
    return Cyclo(r);
}

Cyclo Cyclo::inverse() const {
    if (is_zero()) throw std::domain_error("Cyclo: inverse of zero");
    std::vector<Rational> cv(c_.begin(), c_.end());
    UPoly<Rational> a(std::move(cv)), u, v;
    UPoly<Rational> g = UPoly<Rational>::xgcd(a, phi20_poly(), u, v);
    if (g.degree() != 0) throw std::logic_error("Cyclo: Phi_20 not coprime to element");
    // g is the monic gcd = 1, so u*a = 1 mod Phi_20.
    std::array<Rational, kDegree> r{};
    for (int k = 0; k <= u.degree() && k < kDegree; ++k) r[k] = u[k];
    return Cyclo(r);
}

Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

Cyclo Cyclo::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r(1), b = *this;
    unsigned k = static_cast<unsigned>(e);
    while (k) {
        if (k & 1u) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

Cyclo Cyclo::galois(int k) const {
    k %= 20;
    if (k < 0) k += 20;
    if (std::gcd(k, 20) != 1) throw std::domain_error("Cyclo::galois: exponent not coprime to 20");
    Cyclo r(0);
    for (int m = 0; m < kDegree; ++m) {
        if (c_[m] == 0) continue;
        r += Cyclo(c_[m]) * zeta20_pow(k * m);
    }
    return r;
}

std::complex<double> Cyclo::embed() const {
    const double theta = std::numbers::pi / 10.0;
    const std::complex<double> z(std::cos(theta), std::sin(theta));
    std::complex<double> r(0.0, 0.0);
    for (int k = kDegree - 1; k >= 0; --k) r = r * z + std::complex<double>(to_double(c_[k]), 0.0);
    return r;
}

std::optional<std::pair<Rational, Rational>> Cyclo::as_quadratic() const {
    // sqrt5 = 1 + 2 z^4 - 2 z^6 + ... : read off its power-basis coordinates
    // and solve a*1 + b*sqrt5 = this coordinatewise.
    const Cyclo s5 = sqrt5();
    // Find an index where sqrt5 has a nonzero non-constant coordinate.
    int pivot = -1;
    for (int k = 1; k < kDegree; ++k)
        if (s5.c_[k] != 0) { pivot = k; break; }
    const Rational b = c_[pivot] / s5.c_[pivot];
    const Rational a = c_[0] - b * s5.c_[0];
    Cyclo check = Cyclo(a) + Cyclo(b) * s5;
    if (!(check == *this)) return std::nullopt;
    return std::make_pair(a, b);
}

bool Cyclo::in_Z_eta() const {
    // Z[eta] = Z[phi]: x = m + n*phi with integers m, n. In the 1, sqrt5
    // basis this reads x = (m + n/2) + (n/2) sqrt5.
    auto q = as_quadratic();
    if (!q) return false;
    const Rational n = 2 * q->second;
    const Rational m = q->first - q->second;
    return denominator(n) == 1 && denominator(m) == 1;
}

double Cyclo::embed_real_quadratic(int place) const {
    auto q = as_quadratic();
    if (!q) throw std::domain_error("embed_real_quadratic: element not in Q(sqrt5)");
    const double s = place == 0 ? std::sqrt(5.0) : -std::sqrt(5.0);
    return to_double(q->first) + to_double(q->second) * s;
}

std::string Cyclo::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < kDegree; ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << c_[k];
        if (k > 0) os << "*z^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::uint64_t cyclo_mod_p(const Cyclo& a, std::uint64_t p, std::uint64_t root) {
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    std::uint64_t r = 0;
    for (int k = Cyclo::kDegree - 1; k >= 0; --k) {
        r = mulmod(r, root);
        r = (r + rat_mod_p(a.coeff(k), p)) % p;
    }
    return r;
}

std::array<std::uint64_t, 8> phi20_roots_mod_p(std::uint64_t p) {
    if (p % 20 != 1) throw std::domain_error("phi20_roots_mod_p: p must be 1 mod 20");
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    std::array<std::uint64_t, 8> roots{};
    std::size_t n = 0;
    for (std::uint64_t x = 1; x < p && n < roots.size(); ++x) {
        std::uint64_t x2 = mulmod(x, x), x4 = mulmod(x2, x2);
        std::uint64_t x6 = mulmod(x4, x2), x8 = mulmod(x4, x4);
        std::uint64_t v = (x8 + p - x6 + x4 + p - x2 + 1) % p;
        if (v == 0) roots[n++] = x;
    }
    if (n != roots.size()) throw std::logic_error("phi20_roots_mod_p: expected eight roots");
    return roots;
}

namespace {

using BF = boost::multiprecision::cpp_bin_float_50;

struct CX {
    BF re, im;
};
CX operator+(const CX& a, const CX& b) { return {a.re + b.re, a.im + b.im}; }
CX operator-(const CX& a, const CX& b) { return {a.re - b.re, a.im - b.im}; }
CX operator*(const CX& a, const CX& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CX operator/(const CX& a, const CX& b) {
    BF n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
CX cx_sqrt(const CX& a) {
    BF r = sqrt(sqrt(a.re * a.re + a.im * a.im));
    BF th = atan2(a.im, a.re) / 2;
    return {r * cos(th), r * sin(th)};
}

std::optional<Rational> recognize_rational(const BF& v) {
    const BF tol("1e-30");
    const long long maxden = 100000000LL;
    long long p0 = 1, q0 = 0;
    BF x = v;
    long long a = static_cast<long long>(floor(x).convert_to<long long>());
    long long p1 = a, q1 = 1;
    for (int it = 0; it < 48; ++it) {
        if (abs(v - BF(p1) / BF(q1)) < tol) return Rational(p1, q1);
        BF frac = x - BF(a);
        if (abs(frac) < tol) break;
        x = 1 / frac;
        a = static_cast<long long>(floor(x).convert_to<long long>());
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1;
        p1 = p2; q1 = q2;
        if (q1 > maxden || q1 <= 0) break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Cyclo> cyclo_sqrt(const Cyclo& a) {
    if (a.is_zero()) return Cyclo(0);
    static const int units[8] = {1, 3, 7, 9, 11, 13, 17, 19};
    const BF pi = 4 * atan(BF(1));

    CX w[8];
    for (int j = 0; j < 8; ++j) {
        BF th = pi * units[j] / 10;
        w[j] = {cos(th), sin(th)};
    }
    // Values of a at the eight embeddings, by Horner.
    CX av[8];
    for (int j = 0; j < 8; ++j) {
        CX acc{BF(0), BF(0)};
        for (int k = Cyclo::kDegree - 1; k >= 0; --k) {
            const Rational& c = a.coeff(k);
            BF cv = BF(numerator(c).str()) / BF(denominator(c).str());
            acc = acc * w[j] + CX{cv, BF(0)};
        }
        av[j] = acc;
    }
    CX s[8];
    for (int j = 0; j < 8; ++j) s[j] = cx_sqrt(av[j]);

    // Inverse of the embedding Vandermonde, once.
    CX m[8][16];
    for (int j = 0; j < 8; ++j) {
        CX pw{BF(1), BF(0)};
        for (int i = 0; i < 8; ++i) {
            m[j][i] = pw;
            pw = pw * w[j];
        }
        for (int i = 8; i < 16; ++i) m[j][i] = {BF(i - 8 == j ? 1 : 0), BF(0)};
    }
    for (int col = 0; col < 8; ++col) {
        int piv = col;
        for (int r = col; r < 8; ++r) {
            BF n1 = m[r][col].re * m[r][col].re + m[r][col].im * m[r][col].im;
            BF n2 = m[piv][col].re * m[piv][col].re + m[piv][col].im * m[piv][col].im;
            if (n1 > n2) piv = r;
        }
        for (int i = 0; i < 16; ++i) std::swap(m[col][i], m[piv][i]);
        CX inv = CX{BF(1), BF(0)} / m[col][col];
        for (int i = 0; i < 16; ++i) m[col][i] = m[col][i] * inv;
        for (int r = 0; r < 8; ++r) {
            if (r == col) continue;
            CX f = m[r][col];
            for (int i = 0; i < 16; ++i) m[r][i] = m[r][i] - f * m[col][i];
        }
    }

    for (int mask = 0; mask < 256; ++mask) {
        CX rhs[8];
        for (int j = 0; j < 8; ++j)
            rhs[j] = (mask & (1 << j)) ? CX{BF(0) - s[j].re, BF(0) - s[j].im} : s[j];
        std::array<Rational, Cyclo::kDegree> coords;
        bool ok = true;
        for (int i = 0; i < 8 && ok; ++i) {
            CX ci{BF(0), BF(0)};
            for (int j = 0; j < 8; ++j) ci = ci + m[i][8 + j] * rhs[j];
            if (abs(ci.im) > BF("1e-30")) { ok = false; break; }
            auto r = recognize_rational(ci.re);
            if (!r) { ok = false; break; }
            coords[i] = *r;
        }
        if (!ok) continue;
        Cyclo cand(coords);
        if (cand * cand == a) return cand;
    }
    return std::nullopt;
}

}  // namespace shv
