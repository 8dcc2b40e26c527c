// Sparse multivariate polynomials over an exact coefficient field.
//
// Terms are kept in graded reverse lexicographic order (leading term first);
// zero coefficients are never stored. The coefficient type K needs +, -, *,
// ==, a default constructor equal to zero, and either a member inverse() or
// division via K(1)/x. Exponent vectors have a fixed length shared by all
// operands of an operation.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shv {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

// Graded reverse lexicographic: higher total degree wins; on ties the
// monomial whose rightmost differing exponent is smaller wins.
struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

template <typename K>
K field_inverse(const K& x) {
    if constexpr (requires { x.inverse(); }) {
        return x.inverse();
    } else {
        return K(1) / x;
    }
}

template <typename K>
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, K, GrevlexGreater>;

    MultiPoly() : nvars_(0) {}
    explicit MultiPoly(int nvars) : nvars_(nvars) {}
    MultiPoly(int nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) { prune(); }

    static MultiPoly constant(int nvars, const K& c) {
        MultiPoly r(nvars);
        r.add_term(Monomial(nvars, 0), c);
        return r;
    }
    static MultiPoly variable(int nvars, int i, int e = 1) {
        MultiPoly r(nvars);
        Monomial m(nvars, 0);
        m[i] = e;
        r.add_term(m, K(1));
        return r;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
        return d;
    }
    int degree_in(int var) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = total_degree(terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (total_degree(m) != d) return false;
        return true;
    }

    const Monomial& leading_monomial() const {
        if (terms_.empty()) throw std::domain_error("leading monomial of zero polynomial");
        return terms_.begin()->first;
    }
    const K& leading_coeff() const {
        if (terms_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return terms_.begin()->second;
    }
    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K() : it->second;
    }

    void add_term(const Monomial& m, const K& c) {
        if (c == K()) return;
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second == K()) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, K() - c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, K() - c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        check_vars(a, b);
        MultiPoly r(a.nvars_);
        Monomial m(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    friend MultiPoly operator*(const K& k, const MultiPoly& a) {
        MultiPoly r(a.nvars_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, k * c);
        return r;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(int e) const {
        MultiPoly r = constant(nvars_, K(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            if (e >>= 1) b = b * b;
        }
        return r;
    }

    // Division with remainder by a single divisor (grevlex leading terms).
    // Returns quotient, stores remainder.
    MultiPoly divmod(const MultiPoly& g, MultiPoly& rem) const {
        check_vars(*this, g);
        if (g.is_zero()) throw std::domain_error("polynomial division by zero");
        MultiPoly q(nvars_), r = *this;
        const Monomial& gm = g.leading_monomial();
        const K ginv = field_inverse(g.leading_coeff());
        MultiPoly remainder(nvars_);
        Monomial shift(nvars_);
        while (!r.is_zero()) {
            const auto& [rm, rc] = *r.terms_.begin();
            bool divisible = true;
            for (int i = 0; i < nvars_; ++i) {
                if (rm[i] < gm[i]) { divisible = false; break; }
                shift[i] = rm[i] - gm[i];
            }
            if (!divisible) {
                remainder.add_term(rm, rc);
                r.terms_.erase(r.terms_.begin());
                continue;
            }
            const K f = rc * ginv;
            q.add_term(shift, f);
            // r -= f * shift * g
            Monomial t(nvars_);
            for (const auto& [m, c] : g.terms_) {
                for (int i = 0; i < nvars_; ++i) t[i] = m[i] + shift[i];
                r.add_term(t, K() - f * c);
            }
        }
        rem = remainder;
        return q;
    }

    // Exact division; throws if g does not divide this.
    MultiPoly exact_divide(const MultiPoly& g) const {
        MultiPoly rem;
        MultiPoly q = divmod(g, rem);
        if (!rem.is_zero())
            throw std::domain_error("exact_divide: not divisible, leading remainder term " +
                                    monomial_str(rem.leading_monomial()));
        return q;
    }
    bool divisible_by(const MultiPoly& g) const {
        MultiPoly rem;
        divmod(g, rem);
        return rem.is_zero();
    }

    // Scale so the grevlex leading coefficient is 1.
    MultiPoly monic() const {
        if (is_zero()) return *this;
        return field_inverse(leading_coeff()) * *this;
    }

    K evaluate(const std::vector<K>& x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw std::invalid_argument("evaluate: wrong point dimension");
        K r{};
        for (const auto& [m, c] : terms_) {
            K t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) t = t * x[i];
            r = r + t;
        }
        return r;
    }

    // General composition: substitute variable i by sub[i] (all in a common
    // target ring with new_nvars variables).
    MultiPoly substitute(const std::vector<MultiPoly>& sub) const {
        if (static_cast<int>(sub.size()) != nvars_)
            throw std::invalid_argument("substitute: wrong substitution count");
        const int out_vars = sub.empty() ? 0 : sub[0].nvars();
        // Cache powers of each substituted polynomial.
        std::vector<std::vector<MultiPoly>> pows(nvars_);
        for (int i = 0; i < nvars_; ++i) pows[i].push_back(constant(out_vars, K(1)));
        MultiPoly r(out_vars);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(out_vars, c);
            for (int i = 0; i < nvars_; ++i) {
                while (static_cast<int>(pows[i].size()) <= m[i])
                    pows[i].push_back(pows[i].back() * sub[i]);
                if (m[i] > 0) t = t * pows[i][m[i]];
            }
            r = r + t;
        }
        return r;
    }

    MultiPoly derivative(int var) const {
        MultiPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            K f = c;
            for (int j = 1; j < m[var]; ++j) f = f + c;  // c * m[var] without K(int)
            r.add_term(d, f);
        }
        return r;
    }

    // Map the coefficients through an arbitrary function into another field.
    template <typename K2, typename F>
    MultiPoly<K2> map_coeffs(F&& f) const {
        MultiPoly<K2> r(nvars_);
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    static std::string monomial_str(const Monomial& m) {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!first) os << "*";
            os << "x" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
            first = false;
        }
        if (first) os << "1";
        return os.str();
    }

    // Stable text form "coeff * mono + ..." in the canonical order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            os << coeff_str(c) << " * " << monomial_str(m);
            first = false;
        }
        return os.str();
    }

  private:
    template <typename C>
    static std::string coeff_str(const C& c) {
        if constexpr (requires { c.str(); }) {
            return "(" + c.str() + ")";
        } else {
            std::ostringstream os;
            os << c;
            return os.str();
        }
    }

    static void check_vars(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_)
            throw std::invalid_argument("MultiPoly: variable-count mismatch");
    }
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == K())
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    int nvars_;
    TermMap terms_;
};

}  // namespace shv
