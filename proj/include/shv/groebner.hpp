// Small Buchberger engine over F_p with grevlex, meant for desk-scale
// dimension and degree checks of zero-dimensional-ish ideals. A step budget
// turns runaway computations into a resource error rather than a wrong answer.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "shv/fq.hpp"
#include "shv/poly.hpp"

namespace shv {

struct GroebnerBudgetExceeded : std::runtime_error {
    GroebnerBudgetExceeded()
        : std::runtime_error("groebner_fp: step budget exceeded") {}
};

struct GroebnerResult {
    std::vector<MultiPoly<Fp>> basis;  // reduced, monic, grevlex
    int dimension = -1;                // Krull dimension of the affine variety
    long long degree = -1;             // staircase count when dimension == 0
};

namespace detail {

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline MultiPoly<Fp> mono_mult(const MultiPoly<Fp>& f, const Monomial& m, Fp c) {
    MultiPoly<Fp> r(f.nvars());
    Monomial t(f.nvars());
    for (const auto& [fm, fc] : f.terms()) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = fm[i] + m[i];
        r.add_term(t, fc * c);
    }
    return r;
}

inline MultiPoly<Fp> normal_form(MultiPoly<Fp> f, const std::vector<MultiPoly<Fp>>& basis,
                                 long long& budget) {
    MultiPoly<Fp> rem(f.nvars());
    while (!f.is_zero()) {
        if (--budget < 0) throw GroebnerBudgetExceeded();
        const Monomial lm = f.leading_monomial();
        const Fp lc = f.leading_coeff();
        bool reduced = false;
        for (const auto& g : basis) {
            if (!mono_divides(g.leading_monomial(), lm)) continue;
            Monomial shift(lm.size());
            for (std::size_t i = 0; i < lm.size(); ++i)
                shift[i] = lm[i] - g.leading_monomial()[i];
            f = f - mono_mult(g, shift, lc * field_inverse(g.leading_coeff()));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            f = f - mono_mult(MultiPoly<Fp>::constant(f.nvars(), Fp(1, lc.p)), lm, lc);
        }
    }
    return rem;
}

}  // namespace detail

inline GroebnerResult groebner_fp(std::vector<MultiPoly<Fp>> gens,
                                  long long step_budget = 2'000'000) {
    using namespace detail;
    std::vector<MultiPoly<Fp>> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(g.monic());
    if (basis.empty()) throw std::invalid_argument("groebner_fp: no nonzero generators");
    const int n = basis[0].nvars();
    long long budget = step_budget;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Monomial &mi = basis[i].leading_monomial(), &mj = basis[j].leading_monomial();
        // Product criterion: coprime leading monomials give a trivial S-pair.
        bool coprime = true;
        for (int v = 0; v < n; ++v)
            if (mi[v] > 0 && mj[v] > 0) { coprime = false; break; }
        if (coprime) continue;
        const Monomial l = mono_lcm(mi, mj);
        Monomial si(n), sj(n);
        for (int v = 0; v < n; ++v) { si[v] = l[v] - mi[v]; sj[v] = l[v] - mj[v]; }
        MultiPoly<Fp> s = mono_mult(basis[i], si, field_inverse(basis[i].leading_coeff())) -
                          mono_mult(basis[j], sj, field_inverse(basis[j].leading_coeff()));
        if (s.is_zero()) continue;
        MultiPoly<Fp> r = normal_form(std::move(s), basis, budget);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        for (std::size_t k = 0; k + 1 < basis.size(); ++k)
            pairs.emplace_back(k, basis.size() - 1);
        if (--budget < 0) throw GroebnerBudgetExceeded();
    }

    // Minimalize, then inter-reduce.
    std::vector<MultiPoly<Fp>> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            if (mono_divides(basis[j].leading_monomial(), basis[i].leading_monomial()) &&
                !(basis[i].leading_monomial() == basis[j].leading_monomial() && j > i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<MultiPoly<Fp>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        minimal[i] = normal_form(minimal[i], others, budget).monic();
    }

    GroebnerResult out;
    out.basis = std::move(minimal);

    // Krull dimension from leading monomials: the largest set of variables S
    // such that no leading monomial is supported inside S.
    std::vector<Monomial> lms;
    for (const auto& g : out.basis) lms.push_back(g.leading_monomial());
    bool ideal_is_unit = false;
    for (const auto& m : lms)
        if (total_degree(m) == 0) ideal_is_unit = true;
    if (ideal_is_unit) {
        out.dimension = -1;  // empty variety
        out.degree = 0;
        return out;
    }
    int best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        bool independent = true;
        for (const auto& m : lms) {
            bool inside = true;
            for (int v = 0; v < n; ++v)
                if (m[v] > 0 && !(mask & (1 << v))) { inside = false; break; }
            if (inside) { independent = false; break; }
        }
        if (independent) best = std::max(best, __builtin_popcount(mask));
    }
    out.dimension = best;

    if (out.dimension == 0) {
        // Every variable has a pure-power leading monomial; count the staircase.
        std::vector<int> bound(n, -1);
        for (const auto& m : lms) {
            int var = -1;
            bool pure = true;
            for (int v = 0; v < n; ++v) {
                if (m[v] == 0) continue;
                if (var >= 0) { pure = false; break; }
                var = v;
            }
            if (pure && var >= 0)
                bound[var] = (bound[var] < 0) ? m[var] : std::min(bound[var], m[var]);
        }
        for (int v = 0; v < n; ++v)
            if (bound[v] < 0)
                throw std::logic_error("groebner_fp: dimension 0 without pure powers");
        long long count = 0;
        Monomial cur(n, 0);
        std::function<void(int)> walk = [&](int v) {
            if (v == n) {
                for (const auto& m : lms)
                    if (mono_divides(m, cur)) return;
                ++count;
                return;
            }
            for (cur[v] = 0; cur[v] < bound[v]; ++cur[v]) walk(v + 1);
            cur[v] = 0;
        };
        walk(0);
        out.degree = count;
    }
    return out;
}

}  // namespace shv
