// Exact arithmetic layer: Q(zeta20), its named constants, the complex
// embedding, reduction to F_p, and the finite-field backends.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "shv/cyclo.hpp"
#include "shv/fq.hpp"
#include "shv/upoly.hpp"

using namespace shv;

namespace {

Cyclo random_cyclo(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    std::array<Rational, Cyclo::kDegree> c;
    for (auto& v : c) v = Rational(num(rng), den(rng));
    return Cyclo(c);
}

}  // namespace

TEST_CASE("defining identities of the named constants") {
    CHECK(Cyclo::i() * Cyclo::i() == Cyclo(-1));
    CHECK(Cyclo::zeta5().pow(5) == Cyclo(1));
    CHECK_FALSE(Cyclo::zeta5() == Cyclo(1));
    CHECK(Cyclo::sqrt5() * Cyclo::sqrt5() == Cyclo(5));
    // delta^2 = -3 - eta
    CHECK(Cyclo::delta() * Cyclo::delta() + Cyclo::eta() == Cyclo(-3));
    // eta satisfies x^2 + x - 1 = 0
    CHECK(Cyclo::eta() * Cyclo::eta() + Cyclo::eta() - Cyclo(1) == Cyclo(0));
    // phi satisfies x^2 = x + 1
    CHECK(Cyclo::phi() * Cyclo::phi() == Cyclo::phi() + Cyclo(1));
    // alpha = -(3+sqrt5)/2
    CHECK(Cyclo(2) * Cyclo::alpha() + Cyclo(3) + Cyclo::sqrt5() == Cyclo(0));
    // Phi_20(zeta20) = 0
    Cyclo z = Cyclo::zeta20();
    CHECK(z.pow(8) - z.pow(6) + z.pow(4) - z.pow(2) + Cyclo(1) == Cyclo(0));
    // zeta20 is a primitive 20th root: z^10 = -1
    CHECK(z.pow(10) == Cyclo(-1));
}

TEST_CASE("field axioms and inversion on random elements") {
    std::mt19937_64 rng(20240501);
    for (int t = 0; t < 200; ++t) {
        Cyclo a = random_cyclo(rng), b = random_cyclo(rng);
        CHECK(a * b == b * a);
        CHECK((a + b) * (a - b) == a * a - b * b);
        if (!a.is_zero()) {
            CHECK(a * a.inverse() == Cyclo(1));
        }
    }
    CHECK_THROWS_AS(Cyclo(0).inverse(), std::domain_error);
}

TEST_CASE("complex embedding is a homomorphism and hits the right values") {
    const double eps = 1e-12;
    auto z = Cyclo::zeta20().embed();
    CHECK(std::abs(z - std::polar(1.0, std::acos(-1.0) / 10.0)) < eps);
    CHECK(std::abs(Cyclo::sqrt5().embed().real() - std::sqrt(5.0)) < eps);
    CHECK(std::abs(Cyclo::sqrt5().embed().imag()) < eps);
    CHECK(std::abs(Cyclo::alpha().embed().real() + (3.0 + std::sqrt(5.0)) / 2.0) < eps);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        Cyclo a = random_cyclo(rng), b = random_cyclo(rng);
        CHECK(std::abs((a * b).embed() - a.embed() * b.embed()) <
              1e-9 * (1.0 + std::abs(a.embed()) * std::abs(b.embed())));
    }
}

TEST_CASE("galois action and conjugation") {
    Cyclo z = Cyclo::zeta20();
    CHECK(z.galois(19) == z.pow(19));
    CHECK((z.conj() * z) == Cyclo(1));
    // Conjugation fixes the real subfield.
    CHECK(Cyclo::sqrt5().conj() == Cyclo::sqrt5());
    CHECK(Cyclo::eta().conj() == Cyclo::eta());
    // delta is purely imaginary: conj negates it.
    CHECK(Cyclo::delta().conj() == -Cyclo::delta());
    // zeta5 -> zeta5^2 under z -> z^13 (13*4 = 52 = 12 mod 20 -> zeta5^3)? verify directly
    CHECK(Cyclo::zeta5().galois(13) == Cyclo::zeta5_pow(3));
}

TEST_CASE("quadratic subfield recognition") {
    auto q = (Cyclo(3) + Cyclo(2) * Cyclo::sqrt5()).as_quadratic();
    REQUIRE(q.has_value());
    CHECK(q->first == Rational(3));
    CHECK(q->second == Rational(2));
    CHECK_FALSE(Cyclo::zeta5().as_quadratic().has_value());
    CHECK(Cyclo::phi().in_Z_eta());
    CHECK(Cyclo::eta().in_Z_eta());
    CHECK((Cyclo::phi() / Cyclo(2)).in_Z_eta() == false);
    // Two real places of Q(sqrt5) see phi as phi and 1-phi.
    CHECK(std::abs(Cyclo::phi().embed_real_quadratic(0) - (1 + std::sqrt(5.0)) / 2) < 1e-12);
    CHECK(std::abs(Cyclo::phi().embed_real_quadratic(1) - (1 - std::sqrt(5.0)) / 2) < 1e-12);
}

TEST_CASE("reduction mod p = 1 mod 20 is a ring homomorphism") {
    const std::uint64_t p = 41;
    auto roots = phi20_roots_mod_p(p);
    for (auto r : roots) {
        std::uint64_t r2 = mulmod64(r, r, p), r4 = mulmod64(r2, r2, p);
        std::uint64_t r6 = mulmod64(r4, r2, p), r8 = mulmod64(r4, r4, p);
        CHECK((r8 + p - r6 + r4 + p - r2 + 1) % p == 0);
    }
    const std::uint64_t r = roots[0];
    CHECK(cyclo_mod_p(Cyclo(1), p, r) == 1);
    // zeta5 maps to r^4.
    CHECK(cyclo_mod_p(Cyclo::zeta5(), p, r) == powmod64(r, 4, p));
    // sqrt5 squares to 5.
    std::uint64_t s = cyclo_mod_p(Cyclo::sqrt5(), p, r);
    CHECK(mulmod64(s, s, p) == 5);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 1000; ++t) {
        Cyclo a = random_cyclo(rng), b = random_cyclo(rng);
        CHECK(cyclo_mod_p(a * b, p, r) ==
              mulmod64(cyclo_mod_p(a, p, r), cyclo_mod_p(b, p, r), p));
        CHECK(cyclo_mod_p(a + b, p, r) ==
              (cyclo_mod_p(a, p, r) + cyclo_mod_p(b, p, r)) % p);
    }
    CHECK_THROWS(cyclo_mod_p(Cyclo(Rational(1, 41)), p, r));
}

TEST_CASE("prime field basics") {
    Fp a(5, 13), b(9, 13);
    CHECK((a * b).v == 45 % 13);
    CHECK((a / b * b) == a);
    CHECK(a.pow(12).v == 1);
    CHECK(Fp(3, 13).is_square());   // 3 = 4^2 mod 13
    CHECK_FALSE(Fp(2, 13).is_square());
}

TEST_CASE("extension fields: F_4, F_9, F_49 structure") {
    for (auto [p, k] : {std::pair<std::uint64_t, unsigned>{2, 2}, {3, 2}, {7, 2}, {3, 4}}) {
        const FqCtx& F = FqCtx::get(p, k);
        const std::uint64_t q = F.q();
        // Frobenius x -> x^p is additive and multiplicative; x^q = x.
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(F.pow(a, q) == a);
            for (std::uint32_t b = 0; b < std::min<std::uint64_t>(q, 16); ++b) {
                CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
                CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
            }
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.from_int(1));
        }
    }
    // F_81 contains a primitive 5th root of unity, F_9 does not.
    CHECK(FqCtx::get(3, 4).q() == 81);
    const FqCtx& F81 = FqCtx::get(3, 4);
    bool found5 = false;
    for (std::uint32_t a = 1; a < 81; ++a)
        if (F81.order(a) == 5) found5 = true;
    CHECK(found5);
    const FqCtx& F9 = FqCtx::get(3, 2);
    for (std::uint32_t a = 1; a < 9; ++a) CHECK(F9.order(a) != 5);
}

TEST_CASE("univariate polynomial division and xgcd over Q") {
    using P = UPoly<Rational>;
    P x = P::x();
    P f = (x * x - P::constant(1)) * (x + P::constant(3));
    P g = x * x - P::constant(1);
    CHECK((f / g) == x + P::constant(3));
    CHECK((f % g).is_zero());
    P u, v;
    P d = P::xgcd(f, x - P::constant(2), u, v);
    CHECK(d.degree() == 0);
    CHECK((u * f + v * (x - P::constant(2))) == d);
}
