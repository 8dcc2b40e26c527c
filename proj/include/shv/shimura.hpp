// Models of the special surfaces and curves cut out by the order-5 action:
// restriction of the 136 theta quadrics to the eigenspace charts, the conic
// and sextic models derived as gcds of the restricted relations, their
// incidence and singularity combinatorics, the symmetric (S_5) model of the
// sextic, its canonical image, and the intersections with the Schottky form.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shv/fq.hpp"
#include "shv/heisenberg.hpp"
#include "shv/poly.hpp"

namespace shv {

struct QuadricClass {
    MultiPoly<Cyclo> poly;         // normalized: first coefficient 1
    Matrix<Cyclo> gram;            // symmetric matrix of the restricted form
    std::vector<int> members;      // indices into even_characteristics(4)
    int rank = 0;
};

struct RestrictedQuadrics {
    Matrix<Cyclo> chart;           // 16 x d
    std::vector<QuadricClass> classes;
    std::vector<int> zero_members;  // characteristics restricting to 0
};

// Groups the 136 genus-4 theta quadrics by proportionality after pulling
// back along the chart columns.
RestrictedQuadrics restrict_quadrics(const Matrix<Cyclo>& chart);

// Restriction of one of the two degree-32 relations (index 0 or 1) to the
// chart, as a polynomial in the chart variables.
MultiPoly<Cyclo> restrict_relation(const Matrix<Cyclo>& chart, int which);

// Restriction of the Schottky polynomial F_J to the chart (degree 16).
MultiPoly<Cyclo> restrict_schottky(const Matrix<Cyclo>& chart);

struct DerivedModel {
    MultiPoly<Cyclo> model;        // monic gcd of the two restricted relations
    MultiPoly<Cyclo> cofactor_a, cofactor_b;
    int degree = 0;
};

// Gcd of the two restricted relations over Q(zeta20), certified by exact
// division and a modular coprimality witness for the cofactors.
DerivedModel derive_model(const Matrix<Cyclo>& chart);

// Symmetric matrix of a quadratic form in d variables.
Matrix<Cyclo> quadratic_gram(const MultiPoly<Cyclo>& q, int d);

// Absolute irreducibility of a degree-d form in 4 variables, certified mod p
// via a plane section and the partial-differential (Ruppert/Gao) criterion.
// Requires p large relative to d; returns false only on a genuine failure of
// the criterion for every tried section.
bool absolutely_irreducible_mod_p(const MultiPoly<Cyclo>& f, std::uint64_t p,
                                  std::uint64_t root);

// Rational parametrization of a conic through a known point on it: returns
// the three degree-2 binary forms of the map P^1 -> conic.
std::vector<MultiPoly<Cyclo>> parametrize_conic(const MultiPoly<Cyclo>& conic,
                                                const std::vector<Cyclo>& point);

struct ConicConfiguration {
    std::vector<Cyclo> points;              // finite parameter values
    bool infinity_is_point = false;         // whether (1:0) occurs
    int distinct_points = 0;
    std::vector<std::pair<int, int>> matching;       // 6 pairs from rank-2 classes
    std::vector<std::pair<int, int>> rank3_pairs;    // per rank-3 class: pair ids
    std::vector<int> pair_use_count;                 // rank-3 classes through a pair
    bool moebius_match = false;             // carried onto {0,inf} u {z5^k, a z5^k}
};

// Full incidence analysis of the 27 conic classes on the k=2 model.
ConicConfiguration conic_configuration(const RestrictedQuadrics& rq,
                                       const DerivedModel& model);

struct SingularPoint {
    std::vector<std::uint64_t> coords;  // projective, over F_p
    bool is_cusp = false;               // quadratic part zero, triangle cone
    int incidence = 0;                  // restricted quadric classes through it
};

struct SingularLocusReport {
    std::uint64_t p = 0;
    std::vector<SingularPoint> points;
    int cusps = 0, nodes = 0;
};

// Exhaustive singular-point scan of the model surface over P^3(F_p) for
// p = 1 mod 20, with tangent-cone classification and quadric incidence.
SingularLocusReport sextic_singular_locus(const RestrictedQuadrics& rq,
                                          const DerivedModel& model, std::uint64_t p);

struct S5Report {
    bool grad_zero_p0 = false, grad_zero_q0 = false;
    bool p0_quadratic_zero = false, p0_cone_triangle = false;
    int q0_cone_rank = 0;
    int orbit_p0 = 0, orbit_q0 = 0;
};

// Exact checks on the published symmetric sextic s2^3 + 10 s3^2 - 20 s2 s4
// inside the hyperplane s1 = 0.
S5Report s5_model_checks();

struct CanonicalMapReport {
    int cusp_quadric_dim = 0;       // quadrics on s1=0 through the 5 cusps
    bool six_orbit_spans = false;
    bool sum_identically_zero = false;
    int points_checked = 0;
    bool cubic_sum_vanishes = false;
    bool alternating_cubic_vanishes = false;
    bool transposition_fixed_point_free = false;  // acts as three 2-cycles
    bool embedding_matches = false;  // conjugate to the published S5 -> S6 images
    int singular_count_33 = 0;      // singular points of the (3,3) model
};

CanonicalMapReport canonical_map_check(std::uint64_t p);

struct QuadricCurveReport {
    std::uint64_t p = 0;
    bool type10_factors = false;    // sextic pullback = c * C1^2 * C2^2
    int resultant_distinct_roots = 0;
    bool type5_square = false;      // pullback = c * D^2
    int type5_nodes = 0;
    // Schottky restriction data on the same type-10 parametrization.
    bool fj_divisible = false;      // C1^2 C2^2 divides the F_J pullback
    std::pair<int, int> residual_bidegree{0, 0};
    std::pair<int, int> residual_squarefree_bidegree{0, 0};
};

// Mod-p parametrization of a type-10 quadric as P^1 x P^1 and factorization
// of the sextic and Schottky pullbacks on it; includes the type-5 analysis.
QuadricCurveReport quadric_intersection_curves(const RestrictedQuadrics& rq,
                                               const DerivedModel& model,
                                               const MultiPoly<Cyclo>& fj_restricted,
                                               std::uint64_t p);

struct JacobiReport {
    bool conic_divides_fj = false;  // k=2: F_J restriction = conic * cofactor
    int groebner_dim = -2;          // k=4 chart: dim of (model, F_J, type-5) mod p
};

JacobiReport jacobi_intersections_k2(const DerivedModel& conic,
                                     const MultiPoly<Cyclo>& fj_restricted);
int jacobi_groebner_dim(const RestrictedQuadrics& rq, const DerivedModel& model,
                        const MultiPoly<Cyclo>& fj_restricted, std::uint64_t p);

// Reduction of an exact polynomial mod p at a chosen root of Phi_20.
MultiPoly<Fp> reduce_mod_p(const MultiPoly<Cyclo>& f, std::uint64_t p, std::uint64_t root);

}  // namespace shv
