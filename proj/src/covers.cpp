#include "shv/covers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace shv {

namespace {

int floor_div(int a, int b) {
    int q = a / b;
    if (a % b != 0 && (a < 0) != (b < 0)) --q;
    return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

std::vector<int> sorted_mod5(std::vector<int> v) {
    for (int& x : v) x = ((x % 5) + 5) % 5;
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

int CyclicCover::degree_sum() const {
    int s = 0;
    for (const auto& b : branch) s += b.exponent;
    return s;
}

int CyclicCover::infinity_exponent() const {
    // With w = 1/u the local equation reads v^n = w^{-degree_sum} * unit.
    return (n - degree_sum() % n) % n;
}

int cover_genus(const CyclicCover& c) {
    if (c.n < 2) throw std::invalid_argument("cover_genus: n < 2");
    int total = c.n - std::gcd(c.degree_sum(), c.n);
    for (const auto& b : c.branch) {
        if (b.exponent <= 0) throw std::invalid_argument("cover_genus: exponent <= 0");
        total += c.n - std::gcd(b.exponent, c.n);
    }
    if (total % 2 != 0) throw std::logic_error("cover_genus: odd ramification total");
    return 1 - c.n + total / 2;
}

std::string EigenForm::str(const CyclicCover& c) const {
    std::string s;
    auto factor = [&s](const std::string& base, int e) {
        if (e == 0) return;
        if (!s.empty()) s += " ";
        s += base;
        if (e > 1) s += "^" + std::to_string(e);
    };
    int upow = u_power;
    for (std::size_t i = 0; i < numerator.size(); ++i) {
        if (c.branch[i].at_zero) upow += numerator[i];
        else factor("(u-" + c.branch[i].label + ")", numerator[i]);
    }
    std::string out;
    if (upow > 0) {
        out = "u";
        if (upow > 1) out += "^" + std::to_string(upow);
        out += " ";
    }
    out += s.empty() ? "" : s + " ";
    out += "du/v";
    if (d > 1) out += "^" + std::to_string(d);
    return out;
}

std::vector<EigenForm> regular_forms(const CyclicCover& c) {
    const int n = c.n;
    const int a_total = c.degree_sum();
    const int e_inf = n / std::gcd(a_total, n);
    const int ordv_inf = a_total * e_inf / n;  // pole order of v at infinity

    std::vector<EigenForm> forms;
    for (int d = 1; d < n; ++d) {
        // Minimal admissible vanishing of the numerator at each branch point.
        std::vector<int> r(c.branch.size(), 0);
        int rsum = 0;
        for (std::size_t i = 0; i < c.branch.size(); ++i) {
            const int a = c.branch[i].exponent;
            const int e = n / std::gcd(a, n);
            const int val_v = e * a * d / n;  // vanishing order of v^d
            r[i] = std::max(0, ceil_div(val_v - (e - 1), e));
            rsum += r[i];
        }
        // Degree cap from regularity at infinity.
        const int cap = floor_div(d * ordv_inf - e_inf - 1, e_inf);
        for (int j = 0; rsum + j <= cap; ++j) {
            EigenForm f;
            f.numerator = r;
            f.u_power = j;
            f.d = d;
            if (c.aut_u == 0) {
                f.eigen_exp = ((-c.aut_v * d) % 5 + 5) % 5;
            } else {
                // The u-rotation only scales numerators that are powers of u.
                int upow = j;
                for (std::size_t i = 0; i < c.branch.size(); ++i) {
                    if (r[i] == 0) continue;
                    if (!c.branch[i].at_zero)
                        throw std::logic_error(
                            "regular_forms: non-monomial numerator under u-rotation");
                    upow += r[i];
                }
                f.eigen_exp =
                    ((c.aut_u * (upow + 1) - c.aut_v * d) % 5 + 5) % 5;
            }
            forms.push_back(std::move(f));
        }
    }
    if (static_cast<int>(forms.size()) != cover_genus(c))
        throw std::logic_error("regular_forms: basis size differs from genus");
    return forms;
}

std::vector<int> eigen_signature(const CyclicCover& c) {
    std::vector<int> sig;
    for (const auto& f : regular_forms(c)) sig.push_back(f.eigen_exp);
    std::sort(sig.begin(), sig.end());
    return sig;
}

CyclicCover limit_cover(int n, int a, int b) {
    if (std::gcd(a, n) != 1 || std::gcd(b, n) != 1 || std::gcd(a + b, n) != 1)
        throw std::invalid_argument(
            "limit_cover: needs gcd(a,n) = gcd(b,n) = gcd(a+b,n) = 1");
    CyclicCover c;
    c.n = n;
    c.branch = {{"0", a, true}, {"1", b, false}};
    c.name = "t^" + std::to_string(n) + " = r^" + std::to_string(a) +
             " (r-1)^" + std::to_string(b);
    return c;
}

CyclicCover quintic_family(const std::string& name) {
    CyclicCover c;
    c.name = name;
    if (name == "C") {
        c.branch = {{"0", 1, true}, {"1", 1, false}, {"lambda", 1, false}};
    } else if (name == "C'") {
        // Roots of u^2 + lambda u + 1, distinct for generic lambda.
        c.branch = {{"0", 4, true}, {"q1", 1, false}, {"q2", 1, false}};
    } else if (name == "C''") {
        c.branch = {{"0", 3, true}, {"1", 2, false}, {"lambda", 1, false}};
    } else if (name == "C'_mu") {
        // Hyperelliptic rewriting y^2 = (x^5-1)(x^5-mu); the order-5 action
        // rotates x through the fifth roots of unity.
        c.n = 2;
        c.aut_u = 1;
        c.aut_v = 0;
        c.branch = {{"e1", 1, false}, {"e2", 1, false}, {"e3", 1, false},
                    {"e4", 1, false}, {"e5", 1, false}};
        for (int i = 0; i < 5; ++i)
            c.branch.push_back({"m" + std::to_string(i + 1), 1, false});
    } else {
        throw std::invalid_argument("quintic_family: unknown family " + name);
    }
    return c;
}

DegenerationReport degeneration_report(const std::string& family,
                                       const std::string& boundary) {
    CyclicCover degen, limit;
    if (family == "C" && boundary == "0") {
        degen.branch = {{"0", 2, true}, {"1", 1, false}};
        limit = limit_cover(5, 1, 1);
    } else if (family == "C" && boundary == "1") {
        degen.branch = {{"0", 1, true}, {"1", 2, false}};
        limit = limit_cover(5, 1, 1);
    } else if (family == "C" && boundary == "inf") {
        // lambda meets infinity, which already carries exponent 2.
        degen.branch = {{"0", 1, true}, {"1", 1, false}};
        limit = limit_cover(5, 2, 1);
    } else if (family == "C'" && boundary == "0") {
        // In the model y^2 = (x^5-1)(x^5-mu) the five roots of x^5 - mu
        // merge at x = 0 as mu -> 0.
        degen.n = 2;
        degen.aut_u = 1;
        degen.aut_v = 0;
        degen.branch = {{"0", 5, true},     {"e1", 1, false}, {"e2", 1, false},
                        {"e3", 1, false},   {"e4", 1, false}, {"e5", 1, false}};
        limit.n = 2;
        limit.aut_u = 1;
        limit.aut_v = 0;
        limit.branch = {{"e1", 1, false}, {"e2", 1, false}, {"e3", 1, false},
                        {"e4", 1, false}, {"e5", 1, false}};
        limit.name = "t^2 = r^5 - 1";
    } else if (family == "C''" && boundary == "0") {
        degen.branch = {{"0", 4, true}, {"1", 2, false}};
        limit = limit_cover(5, 3, 1);
    } else {
        throw std::invalid_argument("degeneration_report: unsupported case " +
                                    family + " at " + boundary);
    }

    DegenerationReport rep;
    rep.family = family;
    rep.boundary = boundary;
    rep.degenerate_eigen = eigen_signature(degen);
    rep.limit_eigen = eigen_signature(limit);
    rep.degenerate_genus = cover_genus(degen);
    rep.limit_genus = cover_genus(limit);

    std::vector<int> all = rep.degenerate_eigen;
    all.insert(all.end(), rep.limit_eigen.begin(), rep.limit_eigen.end());
    for (int k = 1; k <= 4; ++k) {
        const std::vector<int> target = sorted_mod5({1, 2, k, 2 * k});
        for (int m = 1; m <= 4; ++m) {
            std::vector<int> scaled = all;
            for (int& x : scaled) x *= m;
            if (sorted_mod5(scaled) == target) {
                rep.phi_types.push_back(k);
                break;
            }
        }
    }
    return rep;
}

int deformation_dim(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("deformation_dim: k not in 1..4");
    const std::vector<int> e = sorted_mod5({1, 2, k, 2 * k});
    int dim = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i; j < e.size(); ++j)
            if ((e[i] + e[j]) % 5 == 0) ++dim;
    return dim;
}

namespace {

// Term of the defining polynomial of C' as exponents of (u, v, lambda).
struct Term {
    int u, v, l, coef;
    auto operator<=>(const Term&) const = default;
};

// Checks whether (u, v) -> (1/u, v/u^w) maps C' to itself after clearing
// denominators: each term (a, b, c) goes to (M - a - w b, b, c) where M is
// the largest a + w b, and the transformed term set must equal the original
// up to one global sign.
bool cprime_involution_weight(int w) {
    std::vector<Term> f = {{0, 5, 0, 1}, {6, 0, 0, -1}, {5, 0, 1, -1}, {4, 0, 0, -1}};
    int m = 0;
    for (const auto& t : f) m = std::max(m, t.u + w * t.v);
    for (int sign : {1, -1}) {
        std::vector<Term> g;
        for (const auto& t : f)
            g.push_back({m - t.u - w * t.v, t.v, t.l, sign * t.coef});
        std::sort(g.begin(), g.end());
        std::vector<Term> fs = f;
        std::sort(fs.begin(), fs.end());
        if (g == fs) return true;
    }
    return false;
}

}  // namespace

QuinticClassification classify_genus4_quintics() {
    QuinticClassification out;

    // Exponent multisets of 4 branch points with total 0 mod 5, identified
    // under multiplying every exponent by the same unit.
    std::vector<std::vector<int>> seen;
    std::vector<std::array<int, 4>> reps;
    std::vector<int> orbit_sizes;
    for (int a = 1; a <= 4; ++a)
        for (int b = a; b <= 4; ++b)
            for (int c = b; c <= 4; ++c)
                for (int d = c; d <= 4; ++d) {
                    if ((a + b + c + d) % 5 != 0) continue;
                    std::vector<int> canon = sorted_mod5({a, b, c, d});
                    int orbit = 0;
                    for (int m = 1; m <= 4; ++m) {
                        std::vector<int> s = sorted_mod5({m * a, m * b, m * c, m * d});
                        if (s < canon) canon = s;
                    }
                    // Count distinct multisets in the orbit.
                    std::vector<std::vector<int>> members;
                    for (int m = 1; m <= 4; ++m) {
                        std::vector<int> s = sorted_mod5({m * a, m * b, m * c, m * d});
                        if (std::find(members.begin(), members.end(), s) == members.end())
                            members.push_back(s);
                    }
                    orbit = static_cast<int>(members.size());
                    if (std::find(seen.begin(), seen.end(), canon) == seen.end()) {
                        seen.push_back(canon);
                        reps.push_back({canon[0], canon[1], canon[2], canon[3]});
                        orbit_sizes.push_back(orbit);
                    }
                }

    for (std::size_t i = 0; i < reps.size(); ++i) {
        QuinticFamilyClass cls;
        cls.exponents = reps[i];
        cls.orbit_size = orbit_sizes[i];
        for (const char* name : {"C", "C'", "C''"}) {
            CyclicCover fam = quintic_family(name);
            std::vector<int> ex;
            for (const auto& bp : fam.branch) ex.push_back(bp.exponent);
            ex.push_back(fam.infinity_exponent());
            std::vector<int> canon = sorted_mod5(ex);
            for (int m = 1; m <= 4; ++m) {
                std::vector<int> s = ex;
                for (int& x : s) x *= m;
                s = sorted_mod5(s);
                if (s < canon) canon = s;
            }
            if (canon == std::vector<int>(reps[i].begin(), reps[i].end()))
                cls.family = name;
        }
        out.classes.push_back(std::move(cls));
    }

    for (int w = 1; w <= 5 && out.involution_weight == 0; ++w)
        if (cprime_involution_weight(w)) {
            out.cprime_involution = true;
            out.involution_weight = w;
        }

    // Canonical coordinates of family C are its four eigenforms; the middle
    // one squared equals the product of the two d-extremes on u-power and
    // v-power bookkeeping, which is the rank-3 quadric on the image.
    std::vector<EigenForm> forms = regular_forms(quintic_family("C"));
    const EigenForm* w3 = nullptr;  // d = 2
    const EigenForm* w2 = nullptr;  // d = 3
    const EigenForm* w1 = nullptr;  // d = 4, constant numerator
    for (const auto& f : forms) {
        int deg = f.u_power;
        for (int r : f.numerator) deg += r;
        if (f.d == 2) w3 = &f;
        if (f.d == 3) w2 = &f;
        if (f.d == 4 && deg == 0) w1 = &f;
    }
    if (w1 && w2 && w3) {
        auto upow = [](const EigenForm& f) {
            int deg = f.u_power;
            for (int r : f.numerator) deg += r;
            return deg;
        };
        out.canonical_rank3_relation =
            2 * w2->d == w1->d + w3->d && 2 * upow(*w2) == upow(*w1) + upow(*w3);
    }
    return out;
}

}  // namespace shv
