// Cyclic covers of P^1 of the shape v^n = prod (u - b_i)^{a_i}: genus,
// eigenform bases for the order-5 automorphism, limit covers of degenerating
// one-parameter families, and the classification of the genus-4 quintic
// families with their distinguishing structure.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace shv {

// A finite branch point is kept symbolic: only its exponent and whether it
// sits at u = 0 enter the valuation bookkeeping, never its coordinate.
struct BranchPoint {
    std::string label;
    int exponent = 1;  // positive; reduced mod n only through gcds
    bool at_zero = false;
};

struct CyclicCover {
    int n = 5;                        // covering degree, v^n = g(u)
    std::vector<BranchPoint> branch;  // finite branch points, pairwise distinct
    // The distinguished order-5 automorphism (u, v) -> (z^au u, z^av v) with
    // z = zeta5. The generic case is v -> z v; the hyperelliptic n = 2 models
    // instead rotate u.
    int aut_u = 0, aut_v = 1;
    std::string name;

    int degree_sum() const;        // sum of finite exponents
    int infinity_exponent() const; // degree_sum mod n; 0 means unramified
};

// 1 - n + (1/2) sum over branch points (including infinity) of n - gcd(a, n).
int cover_genus(const CyclicCover& c);

// Regular differential f(u) du / v^d with f = u^{u_power} * prod over branch
// points of (u - b_i)^{numerator[i]}.
struct EigenForm {
    std::vector<int> numerator;
    int u_power = 0;
    int d = 1;
    int eigen_exp = 0;  // pullback eigenvalue zeta5^eigen_exp
    std::string str(const CyclicCover& c) const;
};

// Basis of the regular 1-forms, grouped by the power of v; size equals the
// genus. For each d the basis is the minimal admissible numerator times
// powers of u, which is only an eigenbasis when the extra factors are powers
// of u alone; that holds for every family used here.
std::vector<EigenForm> regular_forms(const CyclicCover& c);

// Sorted eigenvalue exponents of the regular forms.
std::vector<int> eigen_signature(const CyclicCover& c);

// The local model t^n = r^a (r-1)^b of the curve appearing over the
// exceptional line when two branch points of a family collide. Requires
// gcd(a, n) = gcd(b, n) = gcd(a + b, n) = 1, the only case needed here;
// anything else throws.
CyclicCover limit_cover(int n, int a, int b);

// The three one-parameter families of genus-4 quintic covers, by name
// "C" (v^5 = u(u-1)(u-lambda)), "C'" (v^5 = u^4(u^2+lambda u+1)),
// "C''" (v^5 = u^3(u-1)^2(u-lambda)), with lambda generic, plus the
// hyperelliptic rewriting "C'_mu" (y^2 = (x^5-1)(x^5-mu)).
CyclicCover quintic_family(const std::string& name);

struct DegenerationReport {
    std::string family, boundary;
    std::vector<int> degenerate_eigen;  // forms surviving on the limit curve
    std::vector<int> limit_eigen;       // forms of the limit cover
    int degenerate_genus = 0, limit_genus = 0;
    // All k for which the union of the two signatures equals {1, 2, k, 2k}
    // mod 5 up to multiplying every exponent by a unit.
    std::vector<int> phi_types;
};

// Degeneration of a family at a boundary value of its parameter
// ("0", "1" or "inf"), via the curve with merged branch points and the
// matching limit cover.
DegenerationReport degeneration_report(const std::string& family,
                                       const std::string& boundary);

// Number of unordered pairs among the eigenvalue exponents (1, 2, k, 2k)
// summing to 0 mod 5: the dimension of the family of fourfolds whose
// order-5 action has that signature.
int deformation_dim(int k);

struct QuinticFamilyClass {
    std::array<int, 4> exponents;  // representative, sorted
    int orbit_size = 0;            // multisets in the unit-scaling orbit
    std::string family;            // matching named family, if any
};

struct QuinticClassification {
    std::vector<QuinticFamilyClass> classes;
    bool cprime_involution = false;  // (u,v) -> (1/u, v/u^w) preserves C'
    int involution_weight = 0;       // the witness w
    bool canonical_rank3_relation = false;  // X2^2 = X0 X3 for family C
};

// Exponent patterns of 4 branch points with total 0 mod 5, up to unit
// scaling: exactly three classes, with the C' involution and the rank-3
// quadric on C's canonical image verified symbolically.
QuinticClassification classify_genus4_quintics();

}  // namespace shv
