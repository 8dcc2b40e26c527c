#include "shv/heisenberg.hpp"

#include <bit>
#include <stdexcept>

namespace shv {

namespace {

int parity(unsigned x) { return std::popcount(x) & 1; }

}  // namespace

int symp_pairing(const SympVec& v, const SympVec& w) {
    if (v.g != w.g) throw std::invalid_argument("symp_pairing: genus mismatch");
    return parity((v.a & w.b) ^ (v.b & w.a));
}

std::vector<int> transvection_sp(const SympVec& v) {
    if (v.is_zero()) throw std::invalid_argument("transvection_sp: zero vector");
    const int n = 2 * v.g;
    auto bit = [&](const SympVec& u, int i) {
        return i < u.g ? (u.a >> i) & 1u : (u.b >> (i - u.g)) & 1u;
    };
    // Column w of the matrix is t_v(e_w) = e_w + E(e_w, v) v, and
    // E(e_w, v) picks the b block of v against an a-block basis vector.
    std::vector<int> m(n * n, 0);
    for (int col = 0; col < n; ++col) {
        m[col * n + col] = 1;
        const unsigned pair =
            col < v.g ? (v.b >> col) & 1u : (v.a >> (col - v.g)) & 1u;
        if (pair)
            for (int row = 0; row < n; ++row) m[row * n + col] ^= bit(v, row);
    }
    return m;
}

std::vector<int> f2_mat_mul(const std::vector<int>& x, const std::vector<int>& y, int n) {
    std::vector<int> r(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (x[i * n + k])
                for (int j = 0; j < n; ++j) r[i * n + j] ^= y[k * n + j];
    return r;
}

int f2_mat_order(const std::vector<int>& m, int n) {
    std::vector<int> id(n * n, 0), p = m;
    for (int i = 0; i < n; ++i) id[i * n + i] = 1;
    for (int ord = 1; ord <= 720; ++ord) {
        if (p == id) return ord;
        p = f2_mat_mul(p, m, n);
    }
    throw std::runtime_error("f2_mat_order: order exceeds bound");
}

Matrix<Cyclo> schrodinger_U(const SympVec& v) {
    if (v.is_zero()) throw std::invalid_argument("schrodinger_U: zero vector");
    const int n = 1 << v.g;
    Matrix<Cyclo> u(n, n);
    // Shift by the b block and twist by the a block: with this pairing of
    // blocks the lift of t_v intertwines the theta map with U_v directly
    // (w = 0 in equivariance_check), which fixes the convention.
    const Cyclo phase0 = Cyclo::i().pow(1 + std::popcount(v.a & v.b));
    for (unsigned x = 0; x < static_cast<unsigned>(n); ++x) {
        Cyclo ph = phase0;
        if (parity(v.a & x)) ph = -ph;
        u(static_cast<int>(x ^ v.b), static_cast<int>(x)) = ph;
    }
    return u;
}

Matrix<Cyclo> theta_lift(const SympVec& v) {
    const int n = 1 << v.g;
    const Cyclo half = (Cyclo(1) - Cyclo::i()) / Cyclo(2);
    Matrix<Cyclo> m = schrodinger_U(v) + Matrix<Cyclo>::identity(n);
    return half * m;
}

std::vector<long long> symplectic_lift_Z(const SympVec& v) {
    if (v.is_zero()) throw std::invalid_argument("symplectic_lift_Z: zero vector");
    const int g = v.g, n = 2 * g;
    auto vi = [&](int i) -> long long {
        return i < g ? (v.a >> i) & 1u : (v.b >> (i - g)) & 1u;
    };
    // <e_col, v> with <x, y> = x_a . y_b - x_b . y_a.
    auto form = [&](int col) -> long long {
        return col < g ? vi(g + col) : -vi(col - g);
    };
    std::vector<long long> m(n * n, 0);
    for (int col = 0; col < n; ++col) {
        m[col * n + col] = 1;
        const long long c = form(col);
        if (c)
            for (int row = 0; row < n; ++row) m[row * n + col] += c * vi(row);
    }
    return m;
}

std::pair<unsigned, double> equivariance_check(const SympVec& v, const SiegelMatrix& tau,
                                               double tol) {
    const int g = v.g;
    if (tau.g != g) throw std::invalid_argument("equivariance_check: genus mismatch");
    const int n = 1 << g;
    ThetaPoint rhs0 = theta_map(tau, tol);
    ThetaPoint lhs = theta_map(siegel_action(symplectic_lift_Z(v), tau), tol);

    auto proj_dist = [n](const std::vector<cplx>& x, const std::vector<cplx>& y) {
        int px = 0, py = 0;
        for (int i = 1; i < n; ++i) {
            if (std::abs(x[i]) > std::abs(x[px])) px = i;
            if (std::abs(y[i]) > std::abs(y[py])) py = i;
        }
        // Pivot on the dominant coordinate of x for both.
        if (std::abs(y[px]) < 1e-300) return 1e300;
        double d = 0;
        for (int i = 0; i < n; ++i) d = std::max(d, std::abs(x[i] / x[px] - y[i] / y[px]));
        (void)py;
        return d;
    };

    const Matrix<Cyclo> mth = theta_lift(v);
    unsigned best_w = 0;
    double best = 1e300;
    for (unsigned w = 0; w < (1u << (2 * g)); ++w) {
        Matrix<Cyclo> cand = mth;
        if (w != 0) {
            SympVec sw{g, w & ((1u << g) - 1), w >> g};
            Matrix<Cyclo> uw = schrodinger_U(sw);
            // U^{-1} = -U, and the overall sign is projectively immaterial.
            cand = uw * mth * uw;
        }
        std::vector<cplx> img(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) img[i] += cand(i, j).embed() * rhs0.v[j];
        const double d = proj_dist(lhs.v, img);
        if (d < best) {
            best = d;
            best_w = w;
        }
    }
    return {best_w, best};
}

Order5Data build_order5(int skip) {
    const int g = 2, n = 4;
    std::vector<SympVec> word;
    for (unsigned w1 = 1; w1 < 16 && word.empty(); ++w1)
        for (unsigned w2 = 1; w2 < 16 && word.empty(); ++w2)
            for (unsigned w3 = 1; w3 < 16 && word.empty(); ++w3)
                for (unsigned w4 = 1; w4 < 16 && word.empty(); ++w4) {
                    std::vector<SympVec> cand;
                    for (unsigned w : {w1, w2, w3, w4})
                        cand.push_back(SympVec{g, w & 3u, w >> 2});
                    std::vector<int> prod = transvection_sp(cand[0]);
                    for (int i = 1; i < 4; ++i)
                        prod = f2_mat_mul(prod, transvection_sp(cand[i]), n);
                    if (f2_mat_order(prod, n) == 5 && skip-- == 0) word = cand;
                }
    if (word.empty()) throw std::runtime_error("build_order5: no order-5 word");

    Order5Data data;
    data.word = word;
    data.m = theta_lift(word[0]);
    for (int i = 1; i < 4; ++i) data.m = data.m * theta_lift(word[i]);

    // m^5 must be scalar and lambda = -tr(m) a fifth root of that scalar.
    Matrix<Cyclo> m5 = data.m;
    for (int i = 0; i < 4; ++i) m5 = m5 * data.m;
    const Cyclo c = m5(0, 0);
    if (!(m5 == c * Matrix<Cyclo>::identity(4)))
        throw std::runtime_error("build_order5: fifth power not scalar");
    data.lambda = -data.m.trace();
    if (!(data.lambda.pow(5) == c))
        throw std::runtime_error("build_order5: trace normalization failed");

    const Cyclo inv_lambda = data.lambda.inverse();
    data.l = inv_lambda * data.m;
    Matrix<Cyclo> acc = Matrix<Cyclo>::identity(4), sum = acc;
    for (int i = 0; i < 4; ++i) {
        acc = acc * data.l;
        sum = sum + acc;
    }
    if (!(sum == Cyclo(0) * Matrix<Cyclo>::identity(4)))
        throw std::runtime_error("build_order5: charpoly is not Phi_5");

    for (int i = 1; i <= 4; ++i) {
        Matrix<Cyclo> shifted = data.l - Cyclo::zeta5_pow(i) * Matrix<Cyclo>::identity(4);
        auto ker = shifted.kernel();
        if (ker.size() != 1)
            throw std::runtime_error("build_order5: eigenspace dimension != 1");
        std::vector<Cyclo> f = ker[0];
        for (auto& x : f)
            if (!x.is_zero()) {
                const Cyclo inv = x.inverse();
                for (auto& y : f) y = inv * y;
                break;
            }
        data.f.push_back(std::move(f));
    }
    return data;
}

std::vector<std::pair<int, int>> tensor_eigenspace_pairs(int k) {
    if (k != 2 && k != 4) throw std::invalid_argument("tensor_eigenspace_pairs: k not in {2,4}");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if ((i + k * j) % 5 == (1 + k) % 5) pairs.emplace_back(i, j);
    return pairs;
}

Matrix<Cyclo> tensor_eigenspace(const Order5Data& data, int k) {
    const auto pairs = tensor_eigenspace_pairs(k);
    Matrix<Cyclo> chart(16, static_cast<int>(pairs.size()));
    for (std::size_t col = 0; col < pairs.size(); ++col) {
        const auto& fi = data.f[pairs[col].first - 1];
        const auto& fj = data.f[pairs[col].second - 1];
        for (int s = 0; s < 16; ++s)
            chart(s, static_cast<int>(col)) = fi[s & 3] * fj[s >> 2];
    }
    return chart;
}

}  // namespace shv
