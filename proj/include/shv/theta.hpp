// Numerical Siegel theta constants for g <= 4 with certified truncation,
// the second-order theta map, theta quadrics, Schottky's form, and the two
// degree-32 relation circuits cutting out the image of the theta map.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "shv/circuit.hpp"
#include "shv/poly.hpp"
#include "shv/rational.hpp"

namespace shv {

using cplx = std::complex<double>;

// Point of the Siegel upper half space: symmetric g x g complex matrix with
// positive definite imaginary part.
struct SiegelMatrix {
    int g = 0;
    std::vector<cplx> m;  // row-major g x g

    SiegelMatrix() = default;
    SiegelMatrix(int genus, std::vector<cplx> entries);

    cplx at(int i, int j) const { return m[i * g + j]; }

    // Least eigenvalue of the imaginary part (positive by construction).
    double min_im_eigenvalue() const;

    // Direct sum along the diagonal.
    static SiegelMatrix block_diag(const SiegelMatrix& a, const SiegelMatrix& b);
};

struct Characteristic {
    std::vector<int> eps, epsp;  // entries in {0,1}

    int g() const { return static_cast<int>(eps.size()); }
    int parity() const;
    bool is_even() const { return parity() == 0; }
    bool operator==(const Characteristic& o) const = default;
};

struct ThetaPoint {
    int g = 0;
    std::vector<cplx> v;  // 2^g values, index = bits of sigma (sigma_1 lowest)
    int radius = 0;
    double error_bound = 0;
};

// Smallest box radius R >= 2 with exp(-pi*lambda*(R-1)^2) * (2R+1)^g < tol.
int truncation_radius(double lambda, int g, double tol);

// Theta constant of the second kind: sum over m in Z^g of
// exp(2 pi i (m + sigma/2)^t tau (m + sigma/2)).
cplx theta_second_kind(const std::vector<int>& sigma, const SiegelMatrix& tau, double tol);

// Classical theta constant with characteristic [eps; eps'].
cplx theta_with_char(const Characteristic& c, const SiegelMatrix& tau, double tol);

ThetaPoint theta_map(const SiegelMatrix& tau, double tol);

std::vector<Characteristic> even_characteristics(int g);

// Q[eps eps'] = sum over sigma of (-1)^{sigma . eps'} X_sigma X_{sigma+eps},
// a quadric in the 2^g variables X_sigma.
MultiPoly<Rational> quadric_poly(const Characteristic& c);

// |theta[c]^2 - Q[c](Theta)| / max(|theta[c]^2|, scale) at tau.
double square_identity_residual(const Characteristic& c, const SiegelMatrix& tau,
                                double tol);

// Schottky's degree-16 modular form on H_4.
cplx schottky_J(const SiegelMatrix& tau, double tol);

// F_J as a circuit in the 16 variables X_sigma: substituting the theta
// quadrics for the squared thetas in 2^4 sum theta^16 - (sum theta^8)^2.
Circuit schottky_FJ_circuit();

// The two degree-32 relations: each is the product over all sign choices of
// r_1 +- r_2 +- r_3 +- r_4, where r_i^2 is a product of four theta quadrics.
// The product collapses to a polynomial in the r_i^2.
std::pair<Circuit, Circuit> eqmod_circuits();

// The four quadric-product factors (r_i^2) of each relation, as circuits with
// output on the product; used for restriction-first work on small charts.
std::vector<std::vector<Characteristic>> eqmod_factor_characteristics();

// Product over the 8 sign patterns expressed in the squares: callers supply
// the four values R_i = r_i^2 in any commutative ring.
template <typename R>
R sign_product_in_squares(const R& r1, const R& r2, const R& r3, const R& r4) {
    auto dbl = [](const R& x) { return x + x; };
    R b = r1 + r2 + r3 - r4;
    R q23 = dbl(dbl(r2 * r3));  // 4 r2 r3
    R e = b * b + q23 - dbl(dbl(r1 * r2)) - dbl(dbl(r1 * r3));
    R w = dbl(b) - dbl(dbl(r1));  // 2(r1+r2+r3-r4) - 4 r1
    return e * e - q23 * (w * w);
}

// Number of even characteristics whose thetanull at tau is below
// tol * median(|thetanull|). Throws when the median itself is below tol.
int vanishing_count(const SiegelMatrix& tau, double tol);

// Fractional linear action of an integral symplectic matrix (2g x 2g,
// row-major blocks [[A,B],[C,D]]).
SiegelMatrix siegel_action(const std::vector<long long>& msym, const SiegelMatrix& tau);

// Random test point: A + iB, A symmetric in [-1,1], B = C^t C + 0.8 I.
SiegelMatrix random_tau(int g, std::mt19937_64& rng);

}  // namespace shv
