#include "shv/mgcd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "shv/lift.hpp"

namespace shv {

namespace {

// Signals an unlucky interpolation node; the caller retries with a new one.
struct GridFail {};

std::vector<std::vector<std::uint64_t>> pascal_mod_p(int nmax, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> c(nmax + 1);
    for (int i = 0; i <= nmax; ++i) {
        c[i].assign(i + 1, 1);
        for (int j = 1; j < i; ++j) c[i][j] = (c[i - 1][j - 1] + c[i - 1][j]) % p;
    }
    return c;
}

}  // namespace

std::uint64_t poly_modulus(const MultiPoly<Fp>& f) {
    for (const auto& [m, c] : f.terms())
        if (c.p) return c.p;
    throw std::invalid_argument("poly_modulus: no coefficient carries a modulus");
}

MultiPoly<Fp> shear(const MultiPoly<Fp>& f, int var, std::uint64_t gamma) {
    const std::uint64_t p = poly_modulus(f);
    gamma %= p;
    if (var == 0) throw std::invalid_argument("shear: target variable is x_0 itself");
    const int emax = std::max(0, f.degree_in(var));
    auto binom = pascal_mod_p(emax, p);
    std::vector<std::uint64_t> gpow(emax + 1, 1);
    for (int i = 1; i <= emax; ++i) gpow[i] = mulmod64(gpow[i - 1], gamma, p);

    MultiPoly<Fp> r(f.nvars());
    Monomial t;
    for (const auto& [m, c] : f.terms()) {
        const int e = m[var];
        t = m;
        for (int k = 0; k <= e; ++k) {
            t[var] = e - k;
            t[0] = m[0] + k;
            const std::uint64_t s = mulmod64(binom[e][k], gpow[k], p);
            r.add_term(t, Fp(mulmod64(c.v % p, s, p), p));
        }
        t[0] = m[0];
    }
    return r;
}

MultiPoly<Fp> partial_eval(const MultiPoly<Fp>& f, int var, std::uint64_t t) {
    const std::uint64_t p = poly_modulus(f);
    t %= p;
    const int emax = std::max(0, f.degree_in(var));
    std::vector<std::uint64_t> tpow(emax + 1, 1);
    for (int i = 1; i <= emax; ++i) tpow[i] = mulmod64(tpow[i - 1], t, p);

    MultiPoly<Fp> r(f.nvars());
    Monomial mm;
    for (const auto& [m, c] : f.terms()) {
        mm = m;
        mm[var] = 0;
        r.add_term(mm, Fp(mulmod64(c.v % p, tpow[m[var]], p), p));
    }
    return r;
}

FpPoly to_univariate(const MultiPoly<Fp>& f) {
    const std::uint64_t p = poly_modulus(f);
    FpPoly u(p);
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = 1; i < m.size(); ++i)
            if (m[i] != 0)
                throw std::invalid_argument("to_univariate: poly involves more than x_0");
        if (static_cast<int>(u.c.size()) <= m[0]) u.c.resize(m[0] + 1, 0);
        u.c[m[0]] = c.v % p;
    }
    u.trim();
    return u;
}

MultiPoly<Fp> from_univariate(const FpPoly& u, int nvars) {
    MultiPoly<Fp> r(nvars);
    Monomial m(nvars, 0);
    for (int i = 0; i <= u.degree(); ++i) {
        if (u.c[i] == 0) continue;
        m[0] = i;
        r.add_term(m, Fp(u.c[i], u.p));
    }
    return r;
}

namespace {

// Gcd candidate on the slice where variables k+1.. are already fixed; result
// is scaled so the x_0^d coefficient is 1. Throws GridFail on bad nodes.
MultiPoly<Fp> interp_rec(const MultiPoly<Fp>& F, const MultiPoly<Fp>& G, int k, int d,
                         std::uint64_t p, std::mt19937_64& rng) {
    if (k == 0) {
        FpPoly u = fp_gcd(to_univariate(F), to_univariate(G));
        if (u.degree() != d) throw GridFail{};
        return from_univariate(u, F.nvars());
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
    std::vector<std::uint64_t> nodes;
    std::vector<MultiPoly<Fp>> values;
    int tries = 0;
    while (static_cast<int>(nodes.size()) < d + 1) {
        if (++tries > 4 * (d + 1) + 12) throw GridFail{};
        const std::uint64_t t = pick(rng);
        if (std::find(nodes.begin(), nodes.end(), t) != nodes.end()) continue;
        try {
            MultiPoly<Fp> h =
                interp_rec(partial_eval(F, k, t), partial_eval(G, k, t), k - 1, d, p, rng);
            nodes.push_back(t);
            values.push_back(std::move(h));
        } catch (const GridFail&) {
            continue;
        }
    }
    // Lagrange combination in variable k via the master polynomial.
    FpPoly master(p, {1});
    for (auto t : nodes) master = master * FpPoly(p, {(p - t) % p, 1});
    FpPoly mder = master.derivative();
    MultiPoly<Fp> H(F.nvars());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        FpPoly q, r;
        fp_divmod(master, FpPoly(p, {(p - nodes[i]) % p, 1}), q, r);
        FpPoly li = q.scaled(invmod64(mder.eval(nodes[i]), p));
        // Lift li into variable k of the multivariate ring.
        MultiPoly<Fp> lim(F.nvars());
        Monomial m(F.nvars(), 0);
        for (int j = 0; j <= li.degree(); ++j) {
            if (li.c[j] == 0) continue;
            m[k] = j;
            lim.add_term(m, Fp(li.c[j], p));
        }
        H = H + lim * values[i];
    }
    return H;
}

bool coprime_witness_mod_p(const MultiPoly<Fp>& a, const MultiPoly<Fp>& b,
                           std::mt19937_64& rng) {
    const std::uint64_t p = poly_modulus(a.is_zero() ? b : a);
    const int n = a.nvars();
    std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
    for (int attempt = 0; attempt < 6; ++attempt) {
        MultiPoly<Fp> A = a, B = b;
        for (int j = 1; j < n; ++j) {
            const std::uint64_t g = pick(rng);
            A = shear(A, j, g);
            B = shear(B, j, g);
        }
        if (A.degree_in(0) != a.degree() || B.degree_in(0) != b.degree()) continue;
        for (int j = 1; j < n; ++j) {
            const std::uint64_t t = pick(rng);
            A = partial_eval(A, j, t);
            B = partial_eval(B, j, t);
        }
        FpPoly ua = to_univariate(A), ub = to_univariate(B);
        if (ua.degree() != a.degree() || ub.degree() != b.degree()) continue;
        if (fp_gcd(ua, ub).degree() == 0) return true;
    }
    return false;
}

}  // namespace

MultiPoly<Fp> gcd_mod_p(const MultiPoly<Fp>& f, const MultiPoly<Fp>& g,
                        std::mt19937_64& rng) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("gcd_mod_p: zero input");
    const std::uint64_t p = poly_modulus(f);
    const int n = f.nvars();
    if (n == 1)
        return from_univariate(fp_gcd(to_univariate(f), to_univariate(g)), n).monic();

    std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<std::uint64_t> gam(n, 0);
        MultiPoly<Fp> F = f, G = g;
        for (int j = 1; j < n; ++j) {
            gam[j] = pick(rng);
            F = shear(F, j, gam[j]);
            G = shear(G, j, gam[j]);
        }
        if (F.degree_in(0) != f.degree() || G.degree_in(0) != g.degree()) continue;

        // Gcd degree from a handful of full slices.
        int d = -1;
        bool bad = false;
        for (int s = 0; s < 4 && !bad; ++s) {
            MultiPoly<Fp> A = F, B = G;
            for (int j = 1; j < n; ++j) {
                const std::uint64_t t = pick(rng);
                A = partial_eval(A, j, t);
                B = partial_eval(B, j, t);
            }
            FpPoly ua = to_univariate(A), ub = to_univariate(B);
            if (ua.degree() != f.degree() || ub.degree() != g.degree()) { bad = true; break; }
            const int dg = fp_gcd(ua, ub).degree();
            d = (d < 0) ? dg : std::min(d, dg);
        }
        if (bad || d < 0) continue;
        if (d == 0) return MultiPoly<Fp>::constant(n, Fp(1, p));

        MultiPoly<Fp> H;
        try {
            H = interp_rec(F, G, n - 1, d, p, rng);
        } catch (const GridFail&) {
            continue;
        }
        for (int j = 1; j < n; ++j) H = shear(H, j, p - gam[j]);
        H = H.monic();
        if (!f.divisible_by(H) || !g.divisible_by(H)) continue;
        MultiPoly<Fp> A = f.exact_divide(H), B = g.exact_divide(H);
        if (A.degree() == 0 || B.degree() == 0) return H;
        if (coprime_witness_mod_p(A, B, rng)) return H;
    }
    throw std::runtime_error("gcd_mod_p: repeated unlucky randomness");
}

CycloGcdResult gcd_over_cyclotomic(const MultiPoly<Cyclo>& f, const MultiPoly<Cyclo>& g,
                                   const std::vector<std::uint64_t>& primes,
                                   std::mt19937_64& rng, bool certify) {
    if (f.is_zero() || g.is_zero())
        throw std::invalid_argument("gcd_over_cyclotomic: zero input");

    struct PrimeImage {
        std::uint64_t p;
        std::vector<std::uint64_t> roots;
        std::vector<MultiPoly<Fp>> h;  // one gcd per residue of zeta20
        int deg;
    };
    std::vector<PrimeImage> images;

    for (std::uint64_t p : primes) {
        if (p % 20 != 1 || !is_prime_u64(p))
            throw std::invalid_argument("gcd_over_cyclotomic: prime must be 1 mod 20");
        auto roots = phi20_roots_mod_p(p);
        PrimeImage img{p, std::vector<std::uint64_t>(roots.begin(), roots.end()), {}, -1};
        bool usable = true;
        for (auto r : roots) {
            MultiPoly<Fp> fp, gp;
            try {
                fp = f.map_coeffs<Fp>([&](const Cyclo& c) { return Fp(cyclo_mod_p(c, p, r), p); });
                gp = g.map_coeffs<Fp>([&](const Cyclo& c) { return Fp(cyclo_mod_p(c, p, r), p); });
            } catch (const std::exception&) {
                usable = false;  // p divides a denominator
                break;
            }
            if (fp.is_zero() || gp.is_zero() ||
                fp.leading_monomial() != f.leading_monomial() ||
                gp.leading_monomial() != g.leading_monomial()) {
                usable = false;  // leading-term collapse
                break;
            }
            MultiPoly<Fp> h = gcd_mod_p(fp, gp, rng);
            if (img.deg < 0) img.deg = h.degree();
            if (h.degree() != img.deg) { usable = false; break; }
            img.h.push_back(std::move(h));
        }
        if (usable) images.push_back(std::move(img));
    }
    if (images.empty())
        throw std::runtime_error("gcd_over_cyclotomic: no usable primes");

    // An unlucky prime only ever inflates the gcd, so the minimum degree wins.
    int dmin = images[0].deg;
    for (const auto& img : images) dmin = std::min(dmin, img.deg);
    std::vector<PrimeImage> kept;
    for (auto& img : images)
        if (img.deg == dmin) kept.push_back(std::move(img));

    CycloGcdResult out;
    out.gcd = MultiPoly<Cyclo>(f.nvars());
    for (const auto& img : kept) out.primes_used.push_back(img.p);

    if (dmin == 0) {
        out.gcd = MultiPoly<Cyclo>::constant(f.nvars(), Cyclo(1));
        if (certify) {
            out.cofactor_f = f;
            out.cofactor_g = g;
        }
        return out;
    }

    // Union of supports across kept primes.
    std::set<Monomial> support;
    for (const auto& img : kept)
        for (const auto& h : img.h)
            for (const auto& [m, c] : h.terms()) support.insert(m);

    std::vector<Integer> moduli;
    for (const auto& img : kept) moduli.push_back(Integer(img.p));

    for (const auto& m : support) {
        std::array<Rational, Cyclo::kDegree> coords{};
        for (int i = 0; i < Cyclo::kDegree; ++i) {
            std::vector<Integer> residues;
            for (const auto& img : kept) {
                std::vector<std::uint64_t> vals;
                for (std::size_t j = 0; j < img.roots.size(); ++j)
                    vals.push_back(img.h[j].coeff(m).v % img.p);
                FpPoly cpoly = fp_interpolate(img.p, img.roots, vals);
                residues.push_back(Integer(cpoly.coeff(i)));
            }
            auto rec = rational_reconstruct(crt(residues, moduli),
                                            [&] {
                                                Integer M = 1;
                                                for (const auto& mo : moduli) M *= mo;
                                                return M;
                                            }());
            if (!rec)
                throw std::runtime_error(
                    "gcd_over_cyclotomic: rational reconstruction failed; add primes");
            coords[i] = *rec;
        }
        out.gcd.add_term(m, Cyclo(coords));
    }
    out.gcd = out.gcd.monic();

    if (certify) {
        out.cofactor_f = f.exact_divide(out.gcd);  // throws if the lift is wrong
        out.cofactor_g = g.exact_divide(out.gcd);
        bool witnessed = false;
        for (const auto& img : kept) {
            const std::uint64_t p = img.p;
            const std::uint64_t r = img.roots[0];
            MultiPoly<Fp> ap, bp;
            try {
                ap = out.cofactor_f.map_coeffs<Fp>(
                    [&](const Cyclo& c) { return Fp(cyclo_mod_p(c, p, r), p); });
                bp = out.cofactor_g.map_coeffs<Fp>(
                    [&](const Cyclo& c) { return Fp(cyclo_mod_p(c, p, r), p); });
            } catch (const std::exception&) {
                continue;
            }
            if (ap.is_zero() || bp.is_zero() ||
                ap.leading_monomial() != out.cofactor_f.leading_monomial() ||
                bp.leading_monomial() != out.cofactor_g.leading_monomial())
                continue;
            if (out.cofactor_f.degree() == 0 || out.cofactor_g.degree() == 0 ||
                coprime_witness_mod_p(ap, bp, rng)) {
                witnessed = true;
                break;
            }
        }
        if (!witnessed)
            throw std::runtime_error(
                "gcd_over_cyclotomic: could not certify cofactor coprimality");
    }
    return out;
}

}  // namespace shv
