// Buchberger engine: dimension and degree readings on known ideals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shv/groebner.hpp"

using namespace shv;

namespace {
const std::uint64_t p = 41;
using P = MultiPoly<Fp>;
P var(int n, int i) { return Fp(1, p) * P::variable(n, i); }
}  // namespace

TEST_CASE("the ideal (x, y) is a point") {
    auto r = groebner_fp({var(2, 0), var(2, 1)});
    CHECK(r.dimension == 0);
    CHECK(r.degree == 1);
    CHECK(r.basis.size() == 2);
}

TEST_CASE("(x^2 - yz, y^3) has dimension 1") {
    P x = var(3, 0), y = var(3, 1), z = var(3, 2);
    auto r = groebner_fp({x * x - y * z, y * y * y});
    CHECK(r.dimension == 1);
}

TEST_CASE("zero-dimensional degree equals the number of solutions") {
    // x^2 = 1, y^2 = 4: four solutions over F_41.
    P x = var(2, 0), y = var(2, 1);
    P one = P::constant(2, Fp(1, p)), four = P::constant(2, Fp(4, p));
    auto r = groebner_fp({x * x - one, y * y - four});
    CHECK(r.dimension == 0);
    CHECK(r.degree == 4);

    // Brute-force count agrees.
    int count = 0;
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b)
            if ((a * a) % p == 1 && (b * b) % p == 4) ++count;
    CHECK(count == 4);
}

TEST_CASE("a unit ideal reports an empty variety") {
    P x = var(2, 0);
    auto r = groebner_fp({x, x + P::constant(2, Fp(1, p))});
    CHECK(r.degree == 0);
}

TEST_CASE("twisted cubic relations") {
    // (y - x^2, z - x^3) is a dimension-1 curve.
    P x = var(3, 0), y = var(3, 1), z = var(3, 2);
    auto r = groebner_fp({y - x * x, z - x * x * x});
    CHECK(r.dimension == 1);
}

TEST_CASE("step budget turns blowups into resource errors") {
    P x = var(3, 0), y = var(3, 1), z = var(3, 2);
    CHECK_THROWS_AS(groebner_fp({x * x - y * z, y * y * y, z * z - x * y}, 3),
                    GroebnerBudgetExceeded);
}
