// Theta constants: series values, product formulas, quadric identities,
// Schottky form, the degree-32 relation circuits, and the symplectic action.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shv/theta.hpp"

using namespace shv;

namespace {

SiegelMatrix tau1(cplx z) { return SiegelMatrix(1, {z}); }

std::vector<long long> mat_mul(const std::vector<long long>& a,
                               const std::vector<long long>& b, int n) {
    std::vector<long long> c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
}

std::vector<long long> random_sp(int g, std::mt19937_64& rng) {
    const int n = 2 * g;
    std::vector<long long> m(n * n, 0), j(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    for (int i = 0; i < g; ++i) {
        j[i * n + (g + i)] = -1;
        j[(g + i) * n + i] = 1;
    }
    std::uniform_int_distribution<int> coin(-1, 1);
    for (int step = 0; step < 4; ++step) {
        std::vector<long long> t(n * n, 0);
        for (int i = 0; i < n; ++i) t[i * n + i] = 1;
        // Alternate B-shears and the inversion.
        if (step % 2 == 0) {
            for (int a = 0; a < g; ++a)
                for (int b = a; b < g; ++b) {
                    int v = coin(rng);
                    t[a * n + (g + b)] = v;
                    t[b * n + (g + a)] = v;
                }
        } else {
            t = j;
        }
        m = mat_mul(m, t, n);
    }
    return m;
}

double tau_dist(const SiegelMatrix& a, const SiegelMatrix& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.m.size(); ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

}  // namespace

TEST_CASE("genus one series value") {
    // Theta of the second kind at tau = i/2 sums exp(-pi n^2).
    cplx v = theta_second_kind({0}, tau1(cplx(0, 0.5)), 1e-13);
    CHECK(std::abs(v - 1.0864348112133080) < 1e-12);
    Characteristic c{{0}, {0}};
    cplx w = theta_with_char(c, tau1(cplx(0, 1.0)), 1e-13);
    CHECK(std::abs(w - 1.0864348112133080) < 1e-12);
}

TEST_CASE("odd characteristics vanish identically") {
    std::mt19937_64 rng(3);
    Characteristic odd{{1}, {1}};
    for (int t = 0; t < 5; ++t) {
        SiegelMatrix tau = random_tau(1, rng);
        CHECK(std::abs(theta_with_char(odd, tau, 1e-12)) < 1e-11);
    }
    Characteristic odd2{{1, 1}, {1, 0}};
    SiegelMatrix tau2 = random_tau(2, rng);
    CHECK(std::abs(theta_with_char(odd2, tau2, 1e-12)) < 1e-11);
}

TEST_CASE("block matrices factor the theta values") {
    std::mt19937_64 rng(7);
    SiegelMatrix a = random_tau(1, rng), b = random_tau(1, rng);
    SiegelMatrix ab = SiegelMatrix::block_diag(a, b);
    for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
            cplx lhs = theta_second_kind({sa, sb}, ab, 1e-12);
            cplx rhs = theta_second_kind({sa}, a, 1e-12) * theta_second_kind({sb}, b, 1e-12);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
    // Genus 2+2 inside genus 4: the 16-vector is the outer product.
    SiegelMatrix s = random_tau(2, rng), t = random_tau(2, rng);
    SiegelMatrix st = SiegelMatrix::block_diag(s, t);
    ThetaPoint pst = theta_map(st, 1e-11), ps = theta_map(s, 1e-11), pt = theta_map(t, 1e-11);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(std::abs(pst.v[i] - ps.v[i & 3] * pt.v[i >> 2]) < 1e-9);
}

TEST_CASE("even characteristic counts") {
    CHECK(even_characteristics(1).size() == 3);
    CHECK(even_characteristics(2).size() == 10);
    CHECK(even_characteristics(3).size() == 36);
    CHECK(even_characteristics(4).size() == 136);
}

TEST_CASE("theta quadrics in genus one") {
    using P = MultiPoly<Rational>;
    P x0 = P::variable(2, 0), x1 = P::variable(2, 1);
    CHECK(quadric_poly(Characteristic{{0}, {0}}) == x0 * x0 + x1 * x1);
    CHECK(quadric_poly(Characteristic{{0}, {1}}) == x0 * x0 - x1 * x1);
}

TEST_CASE("the 136 genus-four quadrics are pairwise distinct") {
    auto evens = even_characteristics(4);
    std::vector<MultiPoly<Rational>> qs;
    for (const auto& c : evens) qs.push_back(quadric_poly(c).monic());
    for (std::size_t i = 0; i < qs.size(); ++i)
        for (std::size_t j = i + 1; j < qs.size(); ++j) CHECK_FALSE(qs[i] == qs[j]);
}

TEST_CASE("squared thetas equal their quadrics in the second-kind values") {
    std::mt19937_64 rng(99);
    // Genus 1, the classical Jacobi instance.
    CHECK(square_identity_residual(Characteristic{{0}, {1}}, tau1(cplx(0, 1)), 1e-13) < 1e-12);
    // Genus 2, random tau, all 10 even characteristics.
    for (int t = 0; t < 3; ++t) {
        SiegelMatrix tau = random_tau(2, rng);
        for (const auto& c : even_characteristics(2))
            CHECK(square_identity_residual(c, tau, 1e-12) < 1e-10);
    }
    // Genus 4 at i*I and one random point.
    SiegelMatrix i4(4, {cplx(0, 1), 0, 0, 0, 0, cplx(0, 1), 0, 0, 0, 0, cplx(0, 1), 0, 0,
                        0, 0, cplx(0, 1)});
    for (const auto& c : even_characteristics(4))
        CHECK(square_identity_residual(c, i4, 1e-11) < 1e-10);
}

TEST_CASE("Schottky form and its theta-quadric expression") {
    std::mt19937_64 rng(17);
    // Block tau lies in the Jacobian-locus closure (decomposable fourfolds;
    // standard fact recorded as a test expectation).
    // Being a cusp form, J decays like exp(-c Im tau), so the block/generic
    // contrast needs test points of comparable small imaginary part.
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    auto small_tau = [&](int g) {
        std::vector<cplx> m(g * g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                double re = u(rng);
                double im = (i == j) ? 1.0 : 0.15 * u(rng);
                m[i * g + j] = m[j * g + i] = cplx(re, im);
            }
        return SiegelMatrix(g, std::move(m));
    };
    cplx jblock = schottky_J(SiegelMatrix::block_diag(small_tau(1), small_tau(3)), 1e-12);
    CHECK(std::abs(jblock) < 1e-10);

    cplx jgen = schottky_J(small_tau(4), 1e-12);
    CHECK(std::abs(jgen) > 1e-9);

    Circuit fj = schottky_FJ_circuit();
    CHECK(fj.degree_bound() == 16);
    auto id = [](const Cyclo& k) { return cplx(k.embed()); };
    for (int t = 0; t < 3; ++t) {
        SiegelMatrix tau = random_tau(4, rng);
        ThetaPoint pt = theta_map(tau, 1e-11);
        cplx fval = fj.evaluate<cplx>(pt.v, id);
        cplx jval = schottky_J(tau, 1e-11);
        double scale = 0;
        for (auto z : pt.v) scale = std::max(scale, std::abs(z));
        CHECK(std::abs(fval - jval) / std::pow(scale, 16) < 1e-7);
    }
}

TEST_CASE("the degree-32 relations vanish on the image of the theta map") {
    std::mt19937_64 rng(23);
    auto [c1, c2] = eqmod_circuits();
    CHECK(c1.degree_bound() == 32);
    CHECK(c2.degree_bound() == 32);
    auto chars = eqmod_factor_characteristics();
    auto id = [](const Cyclo& k) { return cplx(k.embed()); };

    for (int t = 0; t < 4; ++t) {
        SiegelMatrix tau = random_tau(4, rng);
        ThetaPoint pt = theta_map(tau, 1e-11);
        for (int r = 0; r < 2; ++r) {
            const Circuit& cir = (r == 0) ? c1 : c2;
            cplx val = cir.evaluate<cplx>(pt.v, id);
            // Scale: product over the sign patterns of sum |r_i|, with
            // r_i^2 the product of the four theta-squared values.
            double absr[4];
            for (int i = 0; i < 4; ++i) {
                cplx prod = 1;
                for (int a = 0; a < 4; ++a)
                    prod *= std::pow(theta_with_char(chars[r][4 * i + a], tau, 1e-11), 2);
                absr[i] = std::sqrt(std::abs(prod));
            }
            const double s = absr[0] + absr[1] + absr[2] + absr[3];
            const double scale = std::pow(s, 8);
            CHECK(std::abs(val) / scale < 1e-6);
        }
    }

    // A random projective point far from the image gives a nonzero value.
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> pt(16);
    for (auto& z : pt) z = cplx(u(rng), u(rng));
    CHECK(std::abs(c1.evaluate<cplx>(pt, id)) > 1e-8);

    // Degree-32 homogeneity: global sign flip leaves the value unchanged.
    std::vector<cplx> ptn(16);
    for (int i = 0; i < 16; ++i) ptn[i] = -pt[i];
    cplx v1 = c1.evaluate<cplx>(pt, id), v2 = c1.evaluate<cplx>(ptn, id);
    CHECK(std::abs(v1 - v2) < 1e-9 * std::max(1.0, std::abs(v1)));
}

TEST_CASE("vanishing thetanull counts for product loci") {
    std::mt19937_64 rng(31);
    SiegelMatrix tb = random_tau(2, rng);
    SiegelMatrix bb = SiegelMatrix::block_diag(tb, random_tau(2, rng));
    CHECK(vanishing_count(bb, 1e-9) == 36);

    SiegelMatrix te = random_tau(1, rng);
    SiegelMatrix exe = SiegelMatrix::block_diag(te, random_tau(1, rng));
    SiegelMatrix eeb = SiegelMatrix::block_diag(exe, random_tau(2, rng));
    CHECK(vanishing_count(eeb, 1e-9) == 46);

    CHECK(vanishing_count(random_tau(4, rng), 1e-9) == 0);
}

TEST_CASE("symplectic action on the upper half space") {
    std::mt19937_64 rng(41);
    SiegelMatrix tau = random_tau(2, rng);
    // Identity fixes tau.
    std::vector<long long> id(16, 0);
    for (int i = 0; i < 4; ++i) id[i * 4 + i] = 1;
    CHECK(tau_dist(siegel_action(id, tau), tau) < 1e-14);

    // The inversion fixes i*I.
    std::vector<long long> j(16, 0);
    j[0 * 4 + 2] = -1; j[1 * 4 + 3] = -1; j[2 * 4 + 0] = 1; j[3 * 4 + 1] = 1;
    SiegelMatrix ii(2, {cplx(0, 1), 0, 0, cplx(0, 1)});
    CHECK(tau_dist(siegel_action(j, ii), ii) < 1e-13);

    // Group action property.
    for (int t = 0; t < 5; ++t) {
        auto m1 = random_sp(2, rng), m2 = random_sp(2, rng);
        SiegelMatrix lhs = siegel_action(m1, siegel_action(m2, tau));
        SiegelMatrix rhs = siegel_action(mat_mul(m1, m2, 4), tau);
        CHECK(tau_dist(lhs, rhs) < 1e-10);
    }

    // Rejects a non-symplectic matrix.
    std::vector<long long> bad = id;
    bad[1] = 1;
    bad[4] = 1;
    CHECK_THROWS_AS(siegel_action(bad, tau), std::invalid_argument);
}
