// Multivariate gcd. Over F_p: dense interpolation after a generic shear that
// makes every relevant polynomial have a constant leading coefficient in x1.
// Over Q(zeta20): modular images at split primes with degree voting, power
// basis recovery by interpolation at the eight residues of zeta20, CRT and
// rational reconstruction, then certification by exact trial division and a
// modular coprimality check of the cofactors.

#pragma once

#include <random>
#include <vector>

#include "shv/cyclo.hpp"
#include "shv/fppoly.hpp"
#include "shv/poly.hpp"

namespace shv {

// Modulus carried by the coefficients; throws on an all-exemplar-free poly.
std::uint64_t poly_modulus(const MultiPoly<Fp>& f);

// Substitute x_var -> x_var + gamma * x_0.
MultiPoly<Fp> shear(const MultiPoly<Fp>& f, int var, std::uint64_t gamma);

// Substitute x_var -> t (variable count kept, exponent forced to zero).
MultiPoly<Fp> partial_eval(const MultiPoly<Fp>& f, int var, std::uint64_t t);

// Conversions for polynomials supported on x_0 only.
FpPoly to_univariate(const MultiPoly<Fp>& f);
MultiPoly<Fp> from_univariate(const FpPoly& u, int nvars);

// Monic gcd over F_p. Result is grevlex-monic; throws after repeated bad
// random choices (practically unreachable for p above a few hundred).
MultiPoly<Fp> gcd_mod_p(const MultiPoly<Fp>& f, const MultiPoly<Fp>& g,
                        std::mt19937_64& rng);

struct CycloGcdResult {
    MultiPoly<Cyclo> gcd;
    MultiPoly<Cyclo> cofactor_f;  // empty unless certified
    MultiPoly<Cyclo> cofactor_g;
    std::vector<std::uint64_t> primes_used;
};

// Gcd over Q(zeta20). Primes must be distinct, = 1 mod 20, and avoid all
// coefficient denominators (unsuitable primes are skipped). With certify set,
// the result is proved correct: exact divisions succeed and the cofactors are
// coprime (witnessed modulo one prime with no leading-term collapse).
CycloGcdResult gcd_over_cyclotomic(const MultiPoly<Cyclo>& f, const MultiPoly<Cyclo>& g,
                                   const std::vector<std::uint64_t>& primes,
                                   std::mt19937_64& rng, bool certify = true);

}  // namespace shv
