// Symplectic F_2 geometry and the finite Heisenberg group action on theta
// coordinates: transvections, Schroedinger representation matrices, their
// order-4 lifts, an exact order-5 projectivity for g = 2, and the eigenspace
// charts it induces on the 16 coordinates of the g = 4 theta map.

#pragma once

#include <utility>
#include <vector>

#include "shv/cyclo.hpp"
#include "shv/matrix.hpp"
#include "shv/theta.hpp"

namespace shv {

// Vector in F_2^{2g}, split as (a, b) with bit i of each mask holding the
// i-th coordinate of the corresponding block.
struct SympVec {
    int g = 0;
    unsigned a = 0, b = 0;

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const SympVec& o) const = default;
};

// Alternating pairing E(v, w) = a.b' + a'.b mod 2.
int symp_pairing(const SympVec& v, const SympVec& w);

// Transvection t_v(w) = w + E(w, v) v as a 2g x 2g matrix over F_2,
// row-major with entries in {0, 1}. Column order: a block then b block.
std::vector<int> transvection_sp(const SympVec& v);

// Product c = x * y of F_2 matrices in the same layout.
std::vector<int> f2_mat_mul(const std::vector<int>& x, const std::vector<int>& y, int n);

// Multiplicative order of an F_2 matrix (throws past a small bound).
int f2_mat_order(const std::vector<int>& m, int n);

// Monomial 2^g x 2^g matrix over Q(i) acting by
// e_x -> i * i^{a.b} * (-1)^{a.x} e_{x+b}; satisfies U^2 = -I and the
// commutation rule U_v U_w = (-1)^{E(v,w)} U_w U_v.
Matrix<Cyclo> schrodinger_U(const SympVec& v);

// Order-4 lift M = (1-i)/2 (U_v + I) with M^2 = -i U_v.
Matrix<Cyclo> theta_lift(const SympVec& v);

// Integral symplectic transvection x -> x + <x, v> v for the 0/1 lift of v,
// with <x, y> = x_a . y_b - x_b . y_a; reduces to transvection_sp mod 2.
std::vector<long long> symplectic_lift_Z(const SympVec& v);

// Checks Theta(M tau) = U_w M_Theta U_w^{-1} Theta(tau) projectively for some
// w, returning the best w mask and its projective residual.
std::pair<unsigned, double> equivariance_check(const SympVec& v, const SiegelMatrix& tau,
                                               double tol);

struct Order5Data {
    std::vector<SympVec> word;      // four transvections
    Matrix<Cyclo> m;                // product of their lifts, order 5 mod scalars
    Cyclo lambda;                   // -trace(m); m/lambda has charpoly Phi_5
    Matrix<Cyclo> l;                // normalized: l^4 + l^3 + l^2 + l + 1 = 0
    std::vector<std::vector<Cyclo>> f;  // f[i-1] with l f_i = zeta5^i f_i, i = 1..4
};

// Deterministic search (lexicographic word order) for a length-4 transvection
// word whose Sp(4, F_2) image has order 5, with exact eigendata of the lift.
// skip > 0 passes over that many hits, giving independent words for
// cross-validation of word-independent invariants.
Order5Data build_order5(int skip = 0);

// The eigenspace of m (x) m^k on the Kronecker square, eigenvalue
// zeta5^{1+k}: a 16 x d matrix whose columns are f_i (x) f_j over the pairs
// with i + k j = 1 + k mod 5. Index rule: (f (x) h)[s] = f[s & 3] * h[s >> 2].
Matrix<Cyclo> tensor_eigenspace(const Order5Data& data, int k);

// The eigenvalue index pairs (i, j) feeding tensor_eigenspace, in column order.
std::vector<std::pair<int, int>> tensor_eigenspace_pairs(int k);

}  // namespace shv
