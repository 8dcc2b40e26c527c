#include "shv/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shv {

namespace {

constexpr double kPi = std::numbers::pi;

// Jacobi eigenvalue sweep for a small real symmetric matrix.
double min_eigenvalue_sym(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a[p * n + q]) < 1e-300) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2 * a[p * n + q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0];
    for (int i = 1; i < n; ++i) mn = std::min(mn, a[i * n + i]);
    return mn;
}

bool cholesky_ok(const std::vector<double>& a, int n) {
    std::vector<double> l(n * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (s <= 0) return false;
                l[i * n + i] = std::sqrt(s);
            } else {
                l[i * n + j] = s / l[j * n + j];
            }
        }
    }
    return true;
}

// Generic lattice-box summation of exp(pi * i * (m+a)^t T (m+a) + 2 pi i (m+a)^t b).
cplx lattice_sum(const SiegelMatrix& T, const std::vector<double>& a,
                 const std::vector<double>& b, int radius) {
    const int g = T.g;
    std::vector<int> m(g, -radius);
    cplx total = 0;
    std::vector<double> x(g);
    while (true) {
        for (int i = 0; i < g; ++i) x[i] = m[i] + a[i];
        cplx quad = 0;
        for (int i = 0; i < g; ++i) {
            quad += T.at(i, i) * x[i] * x[i];
            for (int j = i + 1; j < g; ++j) quad += 2.0 * T.at(i, j) * x[i] * x[j];
        }
        double lin = 0;
        for (int i = 0; i < g; ++i) lin += x[i] * b[i];
        total += std::exp(cplx(0, kPi) * quad + cplx(0, 2 * kPi * lin));
        int k = 0;
        while (k < g && ++m[k] > radius) m[k++] = -radius;
        if (k == g) break;
    }
    return total;
}

}  // namespace

SiegelMatrix::SiegelMatrix(int genus, std::vector<cplx> entries) : g(genus), m(std::move(entries)) {
    if (static_cast<int>(m.size()) != g * g)
        throw std::invalid_argument("SiegelMatrix: wrong entry count");
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            if (m[i * g + j] != m[j * g + i])
                throw std::invalid_argument("SiegelMatrix: not symmetric");
    std::vector<double> im(g * g);
    for (int i = 0; i < g * g; ++i) im[i] = m[i].imag();
    if (!cholesky_ok(im, g))
        throw std::invalid_argument("SiegelMatrix: imaginary part not positive definite");
}

double SiegelMatrix::min_im_eigenvalue() const {
    std::vector<double> im(g * g);
    for (int i = 0; i < g * g; ++i) im[i] = m[i].imag();
    return min_eigenvalue_sym(im, g);
}

SiegelMatrix SiegelMatrix::block_diag(const SiegelMatrix& a, const SiegelMatrix& b) {
    const int g = a.g + b.g;
    std::vector<cplx> e(g * g, 0);
    for (int i = 0; i < a.g; ++i)
        for (int j = 0; j < a.g; ++j) e[i * g + j] = a.at(i, j);
    for (int i = 0; i < b.g; ++i)
        for (int j = 0; j < b.g; ++j) e[(a.g + i) * g + (a.g + j)] = b.at(i, j);
    return SiegelMatrix(g, std::move(e));
}

int Characteristic::parity() const {
    int s = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) s += eps[i] * epsp[i];
    return s % 2;
}

int truncation_radius(double lambda, int g, double tol) {
    if (lambda <= 0) throw std::invalid_argument("truncation_radius: lambda <= 0");
    for (int r = 2; r < 200; ++r) {
        const double bound =
            std::exp(-kPi * lambda * (r - 1.0) * (r - 1.0)) * std::pow(2.0 * r + 1, g);
        if (bound < tol) return r;
    }
    throw std::runtime_error("truncation_radius: tolerance unreachable");
}

cplx theta_second_kind(const std::vector<int>& sigma, const SiegelMatrix& tau, double tol) {
    const int g = tau.g;
    if (static_cast<int>(sigma.size()) != g)
        throw std::invalid_argument("theta_second_kind: bad sigma length");
    // Series in 2*tau: exp(pi i (m+s/2)^t (2 tau) (m+s/2)).
    SiegelMatrix two_tau = tau;
    for (auto& z : two_tau.m) z *= 2.0;
    const int radius = truncation_radius(two_tau.min_im_eigenvalue(), g, tol);
    std::vector<double> a(g), b(g, 0);
    for (int i = 0; i < g; ++i) a[i] = sigma[i] / 2.0;
    return lattice_sum(two_tau, a, b, radius);
}

cplx theta_with_char(const Characteristic& c, const SiegelMatrix& tau, double tol) {
    const int g = tau.g;
    if (c.g() != g) throw std::invalid_argument("theta_with_char: genus mismatch");
    const int radius = truncation_radius(tau.min_im_eigenvalue(), g, tol);
    std::vector<double> a(g), b(g);
    for (int i = 0; i < g; ++i) {
        a[i] = c.eps[i] / 2.0;
        b[i] = c.epsp[i] / 2.0;
    }
    return lattice_sum(tau, a, b, radius);
}

ThetaPoint theta_map(const SiegelMatrix& tau, double tol) {
    const int g = tau.g;
    ThetaPoint pt;
    pt.g = g;
    pt.error_bound = tol;
    SiegelMatrix two_tau = tau;
    for (auto& z : two_tau.m) z *= 2.0;
    pt.radius = truncation_radius(two_tau.min_im_eigenvalue(), g, tol);
    pt.v.resize(std::size_t(1) << g);
    std::vector<int> sigma(g);
    for (std::size_t idx = 0; idx < pt.v.size(); ++idx) {
        for (int i = 0; i < g; ++i) sigma[i] = (idx >> i) & 1;
        pt.v[idx] = theta_second_kind(sigma, tau, tol);
    }
    return pt;
}

std::vector<Characteristic> even_characteristics(int g) {
    std::vector<Characteristic> out;
    for (std::size_t e = 0; e < (std::size_t(1) << g); ++e) {
        for (std::size_t f = 0; f < (std::size_t(1) << g); ++f) {
            Characteristic c;
            c.eps.resize(g);
            c.epsp.resize(g);
            for (int i = 0; i < g; ++i) {
                c.eps[i] = (e >> i) & 1;
                c.epsp[i] = (f >> i) & 1;
            }
            if (c.is_even()) out.push_back(std::move(c));
        }
    }
    return out;
}

MultiPoly<Rational> quadric_poly(const Characteristic& c) {
    if (!c.is_even()) throw std::invalid_argument("quadric_poly: odd characteristic");
    const int g = c.g();
    const int n = 1 << g;
    std::size_t ebits = 0, fbits = 0;
    for (int i = 0; i < g; ++i) {
        ebits |= std::size_t(c.eps[i]) << i;
        fbits |= std::size_t(c.epsp[i]) << i;
    }
    MultiPoly<Rational> q(n);
    for (std::size_t s = 0; s < std::size_t(n); ++s) {
        const int sign = __builtin_popcount(static_cast<unsigned>(s & fbits)) % 2 ? -1 : 1;
        Monomial m(n, 0);
        m[s] += 1;
        m[s ^ ebits] += 1;
        q.add_term(m, Rational(sign));
    }
    return q;
}

double square_identity_residual(const Characteristic& c, const SiegelMatrix& tau,
                                double tol) {
    const cplx lhs = std::pow(theta_with_char(c, tau, tol), 2);
    ThetaPoint pt = theta_map(tau, tol);
    std::size_t ebits = 0, fbits = 0;
    for (int i = 0; i < c.g(); ++i) {
        ebits |= std::size_t(c.eps[i]) << i;
        fbits |= std::size_t(c.epsp[i]) << i;
    }
    cplx rhs = 0;
    for (std::size_t s = 0; s < pt.v.size(); ++s) {
        const double sign = __builtin_popcount(static_cast<unsigned>(s & fbits)) % 2 ? -1 : 1;
        rhs += sign * pt.v[s] * pt.v[s ^ ebits];
    }
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1.0);
}

cplx schottky_J(const SiegelMatrix& tau, double tol) {
    cplx s16 = 0, s8 = 0;
    for (const auto& c : even_characteristics(tau.g)) {
        const cplx t = theta_with_char(c, tau, tol);
        const cplx t8 = std::pow(t, 8);
        s8 += t8;
        s16 += t8 * t8;
    }
    return 16.0 * s16 - s8 * s8;
}

namespace {

int build_quadric(Circuit& cir, const std::vector<int>& inputs, const Characteristic& c) {
    const int g = c.g();
    std::size_t ebits = 0, fbits = 0;
    for (int i = 0; i < g; ++i) {
        ebits |= std::size_t(c.eps[i]) << i;
        fbits |= std::size_t(c.epsp[i]) << i;
    }
    int acc = -1;
    for (std::size_t s = 0; s < (std::size_t(1) << g); ++s) {
        const int term = cir.mul(inputs[s], inputs[s ^ ebits]);
        const bool neg = __builtin_popcount(static_cast<unsigned>(s & fbits)) % 2;
        if (acc < 0)
            acc = neg ? cir.sub(cir.constant(Cyclo(0)), term) : term;
        else
            acc = neg ? cir.sub(acc, term) : cir.add(acc, term);
    }
    return acc;
}

}  // namespace

Circuit schottky_FJ_circuit() {
    Circuit cir(16);
    std::vector<int> in(16);
    for (int i = 0; i < 16; ++i) in[i] = cir.input(i);
    int s8 = -1, s4 = -1;
    for (const auto& c : even_characteristics(4)) {
        const int q = build_quadric(cir, in, c);
        const int q4 = cir.pow(q, 4);
        const int q8 = cir.pow(q, 8);
        s4 = (s4 < 0) ? q4 : cir.add(s4, q4);
        s8 = (s8 < 0) ? q8 : cir.add(s8, q8);
    }
    const int out = cir.sub(cir.mul(cir.constant(Cyclo(16)), s8), cir.pow(s4, 2));
    cir.set_output(out);
    return cir;
}

std::vector<std::vector<Characteristic>> eqmod_factor_characteristics() {
    // Genus-2 characteristics of the two quartic relations (signs are
    // immaterial: the sign product covers both choices).
    const int rel[2][4][4] = {
        // {eps1, eps2, eps'1, eps'2}
        {{0, 0, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {1, 1, 1, 1}},
        {{0, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 0}, {1, 0, 0, 1}},
    };
    std::vector<std::vector<Characteristic>> out(2);
    for (int r = 0; r < 2; ++r) {
        for (int i = 0; i < 4; ++i) {
            // Genus-4 products: top block (0,0,eps), bottom block (a,eps').
            for (int a = 0; a < 4; ++a) {
                Characteristic c;
                c.eps = {0, 0, rel[r][i][0], rel[r][i][1]};
                c.epsp = {(a >> 1) & 1, a & 1, rel[r][i][2], rel[r][i][3]};
                out[r].push_back(std::move(c));
            }
        }
    }
    return out;
}

std::pair<Circuit, Circuit> eqmod_circuits() {
    auto chars = eqmod_factor_characteristics();
    std::pair<Circuit, Circuit> out{Circuit(16), Circuit(16)};
    for (int r = 0; r < 2; ++r) {
        Circuit& cir = (r == 0) ? out.first : out.second;
        std::vector<int> in(16);
        for (int i = 0; i < 16; ++i) in[i] = cir.input(i);
        int rsq[4];
        for (int i = 0; i < 4; ++i) {
            int prod = -1;
            for (int a = 0; a < 4; ++a) {
                const int q = build_quadric(cir, in, chars[r][4 * i + a]);
                prod = (prod < 0) ? q : cir.mul(prod, q);
            }
            rsq[i] = prod;
        }
        // Product over signs, in the squares: E^2 - 4 R2 R3 (2B - 4 R1)^2.
        const int b0 = cir.sub(cir.add(cir.add(rsq[0], rsq[1]), rsq[2]), rsq[3]);
        const int four = cir.constant(Cyclo(4));
        const int q23 = cir.mul(four, cir.mul(rsq[1], rsq[2]));
        const int e = cir.sub(
            cir.sub(cir.add(cir.pow(b0, 2), q23), cir.mul(four, cir.mul(rsq[0], rsq[1]))),
            cir.mul(four, cir.mul(rsq[0], rsq[2])));
        const int w = cir.sub(cir.add(b0, b0), cir.mul(four, rsq[0]));
        cir.set_output(cir.sub(cir.pow(e, 2), cir.mul(q23, cir.pow(w, 2))));
    }
    return out;
}

int vanishing_count(const SiegelMatrix& tau, double tol) {
    if (tau.g != 4) throw std::invalid_argument("vanishing_count: genus must be 4");
    std::vector<double> mags;
    for (const auto& c : even_characteristics(4))
        mags.push_back(std::abs(theta_with_char(c, tau, tol)));
    std::vector<double> sorted = mags;
    std::sort(sorted.begin(), sorted.end());
    const double median = (sorted[67] + sorted[68]) / 2;
    if (median < tol) throw std::runtime_error("vanishing_count: ill-conditioned tau");
    int count = 0;
    for (double m : mags)
        if (m < tol * median) ++count;
    return count;
}

SiegelMatrix siegel_action(const std::vector<long long>& msym, const SiegelMatrix& tau) {
    const int g = tau.g;
    const int n = 2 * g;
    if (static_cast<int>(msym.size()) != n * n)
        throw std::invalid_argument("siegel_action: wrong matrix size");
    // Symplectic check over Z: M^t J M = J.
    auto idx = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long long s = 0;
            for (int k = 0; k < n; ++k) {
                // (M^t J M)_{ij} = sum_k M_{ki} (J M)_{kj}
                long long jm = 0;
                if (k < g) jm = msym[idx(k + g, j)];
                else jm = -msym[idx(k - g, j)];
                s += msym[idx(k, i)] * jm;
            }
            long long expect = 0;
            if (i < g && j == i + g) expect = 1;
            if (i >= g && j == i - g) expect = -1;
            if (s != expect) throw std::invalid_argument("siegel_action: not symplectic");
        }
    }
    // tau' = (A tau + B)(C tau + D)^{-1}
    std::vector<cplx> num(g * g, 0), den(g * g, 0);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            cplx sn = msym[idx(i, g + j)];  // B
            cplx sd = msym[idx(g + i, g + j)];  // D
            for (int k = 0; k < g; ++k) {
                sn += static_cast<double>(msym[idx(i, k)]) * tau.at(k, j);
                sd += static_cast<double>(msym[idx(g + i, k)]) * tau.at(k, j);
            }
            num[i * g + j] = sn;
            den[i * g + j] = sd;
        }
    }
    // Invert den by Gaussian elimination with partial pivoting.
    std::vector<cplx> inv(g * g, 0);
    for (int i = 0; i < g; ++i) inv[i * g + i] = 1;
    for (int col = 0; col < g; ++col) {
        int piv = col;
        for (int r = col + 1; r < g; ++r)
            if (std::abs(den[r * g + col]) > std::abs(den[piv * g + col])) piv = r;
        if (std::abs(den[piv * g + col]) < 1e-14)
            throw std::runtime_error("siegel_action: C tau + D numerically singular");
        for (int j = 0; j < g; ++j) {
            std::swap(den[col * g + j], den[piv * g + j]);
            std::swap(inv[col * g + j], inv[piv * g + j]);
        }
        const cplx d = den[col * g + col];
        for (int j = 0; j < g; ++j) {
            den[col * g + j] /= d;
            inv[col * g + j] /= d;
        }
        for (int r = 0; r < g; ++r) {
            if (r == col) continue;
            const cplx f = den[r * g + col];
            for (int j = 0; j < g; ++j) {
                den[r * g + j] -= f * den[col * g + j];
                inv[r * g + j] -= f * inv[col * g + j];
            }
        }
    }
    std::vector<cplx> res(g * g, 0);
    for (int i = 0; i < g; ++i)
        for (int k = 0; k < g; ++k)
            for (int j = 0; j < g; ++j)
                res[i * g + j] += num[i * g + k] * inv[k * g + j];
    // Symmetrize away roundoff before validating.
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            const cplx avg = (res[i * g + j] + res[j * g + i]) / 2.0;
            res[i * g + j] = res[j * g + i] = avg;
        }
    return SiegelMatrix(g, std::move(res));
}

SiegelMatrix random_tau(int g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(g * g), c(g * g);
    for (auto& v : c) v = u(rng);
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) a[i * g + j] = a[j * g + i] = u(rng);
    std::vector<cplx> m(g * g);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            double b = (i == j) ? 0.8 : 0.0;
            for (int k = 0; k < g; ++k) b += c[k * g + i] * c[k * g + j];
            m[i * g + j] = cplx(a[i * g + j], b);
        }
    }
    return SiegelMatrix(g, std::move(m));
}

}  // namespace shv
