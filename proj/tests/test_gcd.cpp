// Multivariate gcd over F_p and over Q(zeta20), the CRT/rational lifting
// helpers, circuits, squarefree structure, and square roots in the field.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shv/circuit.hpp"
#include "shv/lift.hpp"
#include "shv/mgcd.hpp"
#include "shv/multiplicity.hpp"

using namespace shv;

namespace {

MultiPoly<Fp> random_fp_poly(std::mt19937_64& rng, int nvars, std::uint64_t p,
                             int nterms, int maxdeg) {
    std::uniform_int_distribution<int> e(0, maxdeg);
    std::uniform_int_distribution<std::uint64_t> c(0, p - 1);
    MultiPoly<Fp> r(nvars);
    for (int t = 0; t < nterms; ++t) {
        Monomial m(nvars);
        for (int i = 0; i < nvars; ++i) m[i] = e(rng);
        r.add_term(m, Fp(c(rng), p));
    }
    return r;
}

MultiPoly<Cyclo> random_cyclo_poly(std::mt19937_64& rng, int nvars, int nterms,
                                   int maxdeg) {
    std::uniform_int_distribution<int> e(0, maxdeg);
    std::uniform_int_distribution<int> c(-4, 4);
    MultiPoly<Cyclo> r(nvars);
    for (int t = 0; t < nterms; ++t) {
        Monomial m(nvars);
        for (int i = 0; i < nvars; ++i) m[i] = e(rng);
        std::array<Rational, Cyclo::kDegree> coords{};
        coords[t % 3] = Rational(c(rng));
        r.add_term(m, Cyclo(coords));
    }
    return r;
}

}  // namespace

TEST_CASE("crt and rational reconstruction") {
    CHECK(crt({Integer(2), Integer(3)}, {Integer(5), Integer(7)}) == 17);
    Integer m = Integer(1000003) * Integer(1000033);
    // Recover -22/7 from its residue.
    Integer b_inv_num = 0;
    Rational target(-22, 7);
    Integer res = (Integer(-22) % m + m) % m;
    // res * 7^{-1} mod m
    Integer s, t;
    xgcd_int(Integer(7), m, s, t);
    Integer c = ((res * s) % m + m) % m;
    auto rec = rational_reconstruct(c, m);
    REQUIRE(rec.has_value());
    CHECK(*rec == target);
}

TEST_CASE("shear and partial evaluation agree with direct evaluation") {
    std::mt19937_64 rng(11);
    const std::uint64_t p = 10061;  // 1 mod 20
    for (int t = 0; t < 20; ++t) {
        MultiPoly<Fp> f = random_fp_poly(rng, 3, p, 8, 5);
        if (f.is_zero()) continue;
        const std::uint64_t g = 1 + rng() % (p - 1);
        MultiPoly<Fp> fs = shear(f, 2, g);
        std::uniform_int_distribution<std::uint64_t> pt(0, p - 1);
        std::uint64_t x = pt(rng), y = pt(rng), z = pt(rng);
        Fp lhs = fs.evaluate({Fp(x, p), Fp(y, p), Fp(z, p)});
        Fp rhs = f.evaluate({Fp(x, p), Fp(y, p), Fp((z + mulmod64(g, x, p)) % p, p)});
        CHECK(lhs == rhs);
        MultiPoly<Fp> fe = partial_eval(f, 1, y);
        CHECK(fe.evaluate({Fp(x, p), Fp(0, p), Fp(z, p)}) ==
              f.evaluate({Fp(x, p), Fp(y, p), Fp(z, p)}));
    }
}

TEST_CASE("gcd over F_p: planted common factors are recovered") {
    std::mt19937_64 rng(2024);
    const std::uint64_t p = 10061;
    for (int t = 0; t < 12; ++t) {
        MultiPoly<Fp> h = random_fp_poly(rng, 3, p, 4, 2);
        MultiPoly<Fp> a = random_fp_poly(rng, 3, p, 5, 3);
        MultiPoly<Fp> b = random_fp_poly(rng, 3, p, 5, 3);
        if (h.is_zero() || a.is_zero() || b.is_zero() || h.degree() == 0) continue;
        MultiPoly<Fp> f = h * a, g = h * b;
        MultiPoly<Fp> d = gcd_mod_p(f, g, rng);
        CHECK(f.divisible_by(d));
        CHECK(g.divisible_by(d));
        CHECK(d.degree() >= h.degree());
        CHECK(d.divisible_by(gcd_mod_p(d, h, rng)));
        // After dividing out, the parts are coprime.
        MultiPoly<Fp> d2 = gcd_mod_p(f.exact_divide(d), g.exact_divide(d), rng);
        CHECK(d2.degree() == 0);
    }
}

TEST_CASE("gcd over F_p: difference of squares") {
    std::mt19937_64 rng(5);
    const std::uint64_t p = 10061;
    using P = MultiPoly<Fp>;
    P x = Fp(1, p) * P::variable(2, 0), y = Fp(1, p) * P::variable(2, 1);
    P f = (x - y) * (x + y);
    P g = (x + y) * (x + y);
    P d = gcd_mod_p(f, g, rng);
    CHECK(d == (x + y).monic());
}

TEST_CASE("gcd over Q(zeta20) with certification") {
    std::mt19937_64 rng(909);
    const std::vector<std::uint64_t> primes = {10061, 10141, 10181};
    using P = MultiPoly<Cyclo>;
    P x = P::variable(3, 0), y = P::variable(3, 1), z = P::variable(3, 2);

    // A conic with genuinely cyclotomic coefficients.
    P h = x * x + Cyclo::sqrt5() * (x * y) + Cyclo::zeta5() * (z * z) -
          Cyclo::eta() * (y * z);
    for (int t = 0; t < 4; ++t) {
        P a = random_cyclo_poly(rng, 3, 5, 2) + x * x * x;
        P b = random_cyclo_poly(rng, 3, 5, 2) + y * y * y;
        auto res = gcd_over_cyclotomic(h * a, h * b, primes, rng, true);
        CHECK(res.gcd == h.monic());
        CHECK(res.cofactor_f * res.gcd == h * a);
        CHECK(res.cofactor_g * res.gcd == h * b);
    }

    // Coprime inputs give a constant gcd.
    auto res1 = gcd_over_cyclotomic(x * x + y * y, z * z - x * y + x * x, primes, rng, true);
    CHECK(res1.gcd.degree() == 0);
}

TEST_CASE("squarefree decomposition and multiplicity profiles") {
    using P = UPoly<Rational>;
    P t = P::x();
    P f = (t - P::constant(1)).pow(3) * (t - P::constant(2));
    auto prof = multiplicity_profile(f);
    CHECK(prof == std::vector<int>{3, 1});

    auto parts = multiplicity_structure(f);
    bool saw_triple = false;
    for (const auto& rc : parts)
        if (rc.multiplicity == 3) {
            saw_triple = true;
            REQUIRE(rc.root.has_value());
            CHECK(*rc.root == Rational(1));
        }
    CHECK(saw_triple);

    // t^4 - 1 over Q(zeta20): four distinct roots (i is in the field).
    using PC = UPoly<Cyclo>;
    PC u = PC::x();
    PC g = u.pow(4) - PC::constant(Cyclo(1));
    CHECK(multiplicity_profile(g) == std::vector<int>{1, 1, 1, 1});

    // Binary-form view: declared degree 4 with a quadratic puts a double
    // root at infinity.
    P q = (t - P::constant(5)) * (t + P::constant(5));
    CHECK(multiplicity_profile(q, 4) == std::vector<int>{2, 1, 1});
}

TEST_CASE("circuits evaluate like the expanded polynomial") {
    // (x0^2 - x1)^3 + 7
    Circuit c(2);
    int x0 = c.input(0), x1 = c.input(1);
    int n = c.pow(c.sub(c.pow(x0, 2), x1), 3);
    c.set_output(c.add(n, c.constant(Cyclo(7))));
    CHECK(c.degree_bound() == 6);

    auto id = [](const Cyclo& k) { return k; };
    Cyclo v = c.evaluate<Cyclo>({Cyclo(3), Cyclo(2)}, id);
    CHECK(v == Cyclo((9 - 2) * (9 - 2) * (9 - 2) + 7));

    // Over F_p through the homomorphism.
    const std::uint64_t p = 10061;
    auto r = phi20_roots_mod_p(p)[0];
    auto tofp = [&](const Cyclo& k) { return Fp(cyclo_mod_p(k, p, r), p); };
    Fp w = c.evaluate<Fp>({Fp(3, p), Fp(2, p)}, tofp);
    CHECK(w.v == (343 + 7) % p);

    // Over a polynomial ring: the circuit expands correctly.
    using P = MultiPoly<Rational>;
    auto toq = [](const Cyclo& k) {
        auto q = k.as_quadratic();
        return P::constant(2, q->first);  // constants here are rational
    };
    P e = c.evaluate<P>({P::variable(2, 0), P::variable(2, 1)}, toq);
    P direct = (P::variable(2, 0) * P::variable(2, 0) - P::variable(2, 1)).pow(3) +
               P::constant(2, Rational(7));
    CHECK(e == direct);
}

TEST_CASE("square roots in Q(zeta20)") {
    auto s5 = cyclo_sqrt(Cyclo(5));
    REQUIRE(s5.has_value());
    CHECK(*s5 * *s5 == Cyclo(5));

    auto sm1 = cyclo_sqrt(Cyclo(-1));
    REQUIRE(sm1.has_value());
    CHECK(*sm1 * *sm1 == Cyclo(-1));

    // delta^2 = -3 - eta, so -3 - eta must be a square.
    auto sd = cyclo_sqrt(Cyclo(-3) - Cyclo::eta());
    REQUIRE(sd.has_value());
    CHECK(*sd * *sd == Cyclo(-3) - Cyclo::eta());

    // A random square.
    Cyclo a = Cyclo(2) + Cyclo::zeta5() - Cyclo::sqrt5() * Cyclo(Rational(1, 2));
    auto sa = cyclo_sqrt(a * a);
    REQUIRE(sa.has_value());
    CHECK(*sa * *sa == a * a);

    // 2 is not a square in Q(zeta20).
    CHECK_FALSE(cyclo_sqrt(Cyclo(2)).has_value());
}
