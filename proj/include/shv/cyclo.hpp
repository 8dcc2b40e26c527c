// Exact arithmetic in the cyclotomic field Q(zeta_20).
//
// Elements are stored in the power basis 1, z, ..., z^7 modulo
// Phi_20(z) = z^8 - z^6 + z^4 - z^2 + 1. The field contains i = z^5,
// zeta_5 = z^4, sqrt(5) = 2(zeta_5 + zeta_5^4) + 1, and the real quadratic
// subfield Q(sqrt 5). The fixed complex embedding sends z to exp(i*pi/10).

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "shv/rational.hpp"

namespace shv {

class Cyclo {
  public:
    static constexpr int kDegree = 8;

    Cyclo() = default;
    Cyclo(long n) { c_[0] = n; }  // NOLINT: implicit by design, mirrors field inclusion Q -> Q(zeta)
    Cyclo(const Rational& r) { c_[0] = r; }  // NOLINT
    explicit Cyclo(std::array<Rational, kDegree> coeffs) : c_(std::move(coeffs)) {}

    // Generators and distinguished constants.
    static Cyclo zeta20();            // z
    static Cyclo zeta20_pow(int k);   // z^k for any integer k
    static Cyclo i();                 // z^5
    static Cyclo zeta5();             // z^4
    static Cyclo zeta5_pow(int k);
    static Cyclo sqrt5();             // 2(zeta5 + zeta5^4) + 1
    static Cyclo eta();               // zeta5 + zeta5^4
    static Cyclo delta();             // zeta5 - zeta5^4, delta^2 = -3 - eta
    static Cyclo alpha();             // zeta5^3 + zeta5^2 - 1 = -(3+sqrt5)/2
    static Cyclo phi();               // (1+sqrt5)/2

    const Rational& coeff(int k) const { return c_[k]; }
    const std::array<Rational, kDegree>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // The rational part; only meaningful when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    friend bool operator==(const Cyclo& a, const Cyclo& b) { return a.c_ == b.c_; }

    Cyclo inverse() const;  // throws std::domain_error on zero
    Cyclo pow(int e) const;

    // Galois action z -> z^k for gcd(k,20)=1; k=19 is complex conjugation,
    // which restricts to zeta5 -> zeta5^-1 on Q(zeta5).
    Cyclo galois(int k) const;
    Cyclo conj() const { return galois(19); }

    // Fixed complex embedding z -> exp(i*pi/10).
    std::complex<double> embed() const;
    // Real embeddings of the subfield Q(sqrt5): sigma maps sqrt5 to +-sqrt(5).
    // place = 0 keeps sqrt5 positive, place = 1 negates it; the element must
    // lie in Q(sqrt5).
    double embed_real_quadratic(int place) const;

    // Decomposition x = a + b*sqrt5 with a, b rational, if x lies in Q(sqrt5).
    std::optional<std::pair<Rational, Rational>> as_quadratic() const;
    // Membership in Z[eta] = Z[phi] (ring of integers of Q(sqrt5)).
    bool in_Z_eta() const;

    std::string str() const;  // power-basis text form, stable ordering

  private:
    std::array<Rational, kDegree> c_{};  // value-initialized to zero
};

// Ring homomorphism Q(zeta20) -> F_p for p = 1 mod 20, sending z to the given
// root of Phi_20 in F_p. Throws if a denominator is divisible by p.
std::uint64_t cyclo_mod_p(const Cyclo& a, std::uint64_t p, std::uint64_t root);

// The roots of Phi_20 in F_p (all eight, sorted) for p = 1 mod 20.
std::array<std::uint64_t, 8> phi20_roots_mod_p(std::uint64_t p);

// A square root of a in Q(zeta20), if one exists in the field. Candidates are
// recognized from high-precision values at all eight complex embeddings and
// then verified exactly, so a returned value always satisfies x*x == a.
std::optional<Cyclo> cyclo_sqrt(const Cyclo& a);

}  // namespace shv
