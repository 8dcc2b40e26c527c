#include "shv/shimura.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <random>

#include "shv/groebner.hpp"
#include "shv/lift.hpp"
#include "shv/mgcd.hpp"
#include "shv/multiplicity.hpp"

namespace shv {

namespace {

// Linear forms X_sigma = sum_j chart(sigma, j) y_j in the chart variables.
std::vector<MultiPoly<Cyclo>> chart_linear_forms(const Matrix<Cyclo>& chart) {
    const int d = chart.cols();
    std::vector<MultiPoly<Cyclo>> forms;
    forms.reserve(chart.rows());
    for (int s = 0; s < chart.rows(); ++s) {
        MultiPoly<Cyclo> f(d);
        for (int j = 0; j < d; ++j) {
            Monomial m(d, 0);
            m[j] = 1;
            f.add_term(m, chart(s, j));
        }
        forms.push_back(std::move(f));
    }
    return forms;
}

std::vector<std::uint64_t> split_primes(std::uint64_t start, int count) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = start + (20 - start % 20 + 1) % 20; static_cast<int>(ps.size()) < count;
         p += 20)
        if (is_prime_u64(p)) ps.push_back(p);
    return ps;
}

}  // namespace

MultiPoly<Fp> reduce_mod_p(const MultiPoly<Cyclo>& f, std::uint64_t p, std::uint64_t root) {
    return f.map_coeffs<Fp>([&](const Cyclo& c) { return Fp(cyclo_mod_p(c, p, root), p); });
}

Matrix<Cyclo> quadratic_gram(const MultiPoly<Cyclo>& q, int d) {
    Matrix<Cyclo> g(d, d);
    const Cyclo half = Cyclo(Rational(1, 2));
    for (const auto& [m, c] : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < d; ++v) {
            if (m[v] == 2) i = j = v;
            if (m[v] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) {
            g(i, i) = c;
        } else {
            g(i, j) = g(i, j) + half * c;
            g(j, i) = g(j, i) + half * c;
        }
    }
    return g;
}

RestrictedQuadrics restrict_quadrics(const Matrix<Cyclo>& chart) {
    const int d = chart.cols();
    const auto forms = chart_linear_forms(chart);
    RestrictedQuadrics out;
    out.chart = chart;
    const auto evens = even_characteristics(4);
    for (int idx = 0; idx < static_cast<int>(evens.size()); ++idx) {
        const auto& c = evens[idx];
        unsigned e = 0, f = 0;
        for (int i = 0; i < 4; ++i) {
            e |= unsigned(c.eps[i]) << i;
            f |= unsigned(c.epsp[i]) << i;
        }
        MultiPoly<Cyclo> q(d);
        for (unsigned s = 0; s < 16; ++s) {
            MultiPoly<Cyclo> term = forms[s] * forms[s ^ e];
            q = (std::popcount(s & f) & 1) ? q - term : q + term;
        }
        if (q.is_zero()) {
            out.zero_members.push_back(idx);
            continue;
        }
        MultiPoly<Cyclo> qn = q.monic();
        bool placed = false;
        for (auto& cls : out.classes)
            if (cls.poly == qn) {
                cls.members.push_back(idx);
                placed = true;
                break;
            }
        if (!placed) {
            QuadricClass cls;
            cls.poly = qn;
            cls.gram = quadratic_gram(qn, d);
            cls.rank = cls.gram.rank();
            cls.members = {idx};
            out.classes.push_back(std::move(cls));
        }
    }
    return out;
}

MultiPoly<Cyclo> restrict_relation(const Matrix<Cyclo>& chart, int which) {
    auto [c1, c2] = eqmod_circuits();
    const Circuit& cir = which == 0 ? c1 : c2;
    const int d = chart.cols();
    auto cmap = [d](const Cyclo& k) { return MultiPoly<Cyclo>::constant(d, k); };
    return cir.evaluate<MultiPoly<Cyclo>>(chart_linear_forms(chart), cmap);
}

MultiPoly<Cyclo> restrict_schottky(const Matrix<Cyclo>& chart) {
    Circuit fj = schottky_FJ_circuit();
    const int d = chart.cols();
    auto cmap = [d](const Cyclo& k) { return MultiPoly<Cyclo>::constant(d, k); };
    return fj.evaluate<MultiPoly<Cyclo>>(chart_linear_forms(chart), cmap);
}

DerivedModel derive_model(const Matrix<Cyclo>& chart) {
    MultiPoly<Cyclo> f = restrict_relation(chart, 0);
    MultiPoly<Cyclo> g = restrict_relation(chart, 1);
    std::mt19937_64 rng(2024);
    CycloGcdResult res = gcd_over_cyclotomic(f, g, split_primes(10000, 12), rng, true);
    DerivedModel out;
    out.model = res.gcd;
    out.cofactor_a = res.cofactor_f;
    out.cofactor_b = res.cofactor_g;
    out.degree = res.gcd.degree();
    return out;
}

bool absolutely_irreducible_mod_p(const MultiPoly<Cyclo>& f, std::uint64_t p,
                                  std::uint64_t root) {
    const int deg = f.degree();
    MultiPoly<Fp> fp = reduce_mod_p(f, p, root);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::uint64_t> pick(1, p - 1);
    for (int attempt = 0; attempt < 8; ++attempt) {
        // Plane section x3 = a x0 + b x1 + c x2, then dehomogenize x2 = 1.
        std::vector<MultiPoly<Fp>> sub;
        for (int v = 0; v < 3; ++v) sub.push_back(MultiPoly<Fp>::variable(3, v));
        MultiPoly<Fp> plane(3);
        for (int v = 0; v < 3; ++v) {
            Monomial m(3, 0);
            m[v] = 1;
            plane.add_term(m, Fp(pick(rng), p));
        }
        sub.push_back(plane);
        MultiPoly<Fp> section = fp.substitute(sub);
        MultiPoly<Fp> biv(2);
        for (const auto& [m, c] : section.terms())
            biv.add_term({m[0], m[1]}, c);
        const int mdeg = biv.degree_in(0), ndeg = biv.degree_in(1);
        if (biv.degree() != deg || mdeg < 1 || ndeg < 1) continue;
        // The criterion needs p beyond (2m-1)n and a squarefree section.
        if (p <= static_cast<std::uint64_t>((2 * mdeg - 1) * ndeg)) return false;
        MultiPoly<Fp> fx = biv.derivative(0), fy = biv.derivative(1);
        if (fx.is_zero() || fy.is_zero()) continue;
        MultiPoly<Fp> sq = gcd_mod_p(biv, fx, rng);
        if (sq.degree() > 0) continue;

        // Kernel dimension of g_y f - g f_y = h_x f - h f_x over the box
        // deg_x g <= m-1, deg_y g <= n and deg_x h <= m, deg_y h <= n-1
        // equals the number of absolutely irreducible factors.
        std::vector<std::pair<int, Monomial>> unknowns;  // (0=g,1=h, monomial)
        for (int i = 0; i < mdeg; ++i)
            for (int j = 0; j <= ndeg; ++j) unknowns.push_back({0, {i, j}});
        for (int i = 0; i <= mdeg; ++i)
            for (int j = 0; j < ndeg; ++j) unknowns.push_back({1, {i, j}});
        std::map<Monomial, int, GrevlexGreater> rowid;
        std::vector<std::vector<Fp>> rows;
        auto row_of = [&](const Monomial& m) {
            auto [it, fresh] = rowid.emplace(m, static_cast<int>(rows.size()));
            if (fresh) rows.push_back(std::vector<Fp>(unknowns.size(), Fp(0, p)));
            return it->second;
        };
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            MultiPoly<Fp> basis(2);
            basis.add_term(unknowns[u].second, Fp(1, p));
            MultiPoly<Fp> expr =
                unknowns[u].first == 0
                    ? basis.derivative(1) * biv - basis * fy
                    : basis * fx - basis.derivative(0) * biv;
            for (const auto& [m, c] : expr.terms()) {
                int r = row_of(m);
                rows[r][u] = rows[r][u] + c;
            }
        }
        Matrix<Fp> sys(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t u = 0; u < unknowns.size(); ++u) sys(r, u) = rows[r][u];
        const int kerdim = static_cast<int>(unknowns.size()) - sys.rank();
        return kerdim == 1;
    }
    return false;
}

namespace {

// Projective point of P^1, kept normalized as (x : 1) or (1 : 0).
struct P1Point {
    bool inf = false;
    Cyclo x;

    bool operator==(const P1Point& o) const { return inf == o.inf && (inf || x == o.x); }
};

P1Point normalize_p1(const Cyclo& u, const Cyclo& v) {
    if (v.is_zero()) {
        if (u.is_zero()) throw std::domain_error("normalize_p1: zero vector");
        return {true, Cyclo(0)};
    }
    return {false, u * v.inverse()};
}

// Root of a t^2 + b t + c in Q(zeta20), if one exists there.
std::optional<Cyclo> quadratic_root(const Cyclo& a, const Cyclo& b, const Cyclo& c) {
    if (a.is_zero()) {
        if (b.is_zero()) return std::nullopt;
        return (Cyclo(0) - c) * b.inverse();
    }
    auto s = cyclo_sqrt(b * b - Cyclo(4) * a * c);
    if (!s) return std::nullopt;
    return (*s - b) * (Cyclo(2) * a).inverse();
}

// Small-height search for a rational point on a plane conic: unit vectors,
// then coordinate lines, then lines x = e_i + a e_j + t e_k with small a.
std::optional<std::vector<Cyclo>> point_on_conic(const MultiPoly<Cyclo>& conic) {
    auto at = [&](const std::vector<Cyclo>& v) { return conic.evaluate(v); };
    for (int i = 0; i < 3; ++i) {
        std::vector<Cyclo> e(3, Cyclo(0));
        e[i] = Cyclo(1);
        if (at(e).is_zero()) return e;
    }
    const Matrix<Cyclo> g = quadratic_gram(conic, 3);
    auto line = [&](const std::vector<Cyclo>& base,
                    const std::vector<Cyclo>& dir) -> std::optional<std::vector<Cyclo>> {
        Cyclo qb(0), qd(0), pol(0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                qb += base[i] * g(i, j) * base[j];
                qd += dir[i] * g(i, j) * dir[j];
                pol += base[i] * g(i, j) * dir[j];
            }
        auto t = quadratic_root(qd, Cyclo(2) * pol, qb);
        if (!t) return std::nullopt;
        std::vector<Cyclo> pt(3);
        for (int i = 0; i < 3; ++i) pt[i] = base[i] + *t * dir[i];
        return pt;
    };
    std::vector<Cyclo> small = {Cyclo(0), Cyclo(1),  Cyclo(-1),
                                Cyclo(2), Cyclo(-2), Cyclo::zeta5_pow(1)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const int k = 3 - i - j;
            for (const Cyclo& a : small) {
                std::vector<Cyclo> base(3, Cyclo(0)), dir(3, Cyclo(0));
                base[i] = Cyclo(1);
                base[j] = a;
                dir[k] = Cyclo(1);
                if (auto pt = line(base, dir)) return pt;
            }
        }
    return std::nullopt;
}

}  // namespace

std::vector<MultiPoly<Cyclo>> parametrize_conic(const MultiPoly<Cyclo>& conic,
                                                const std::vector<Cyclo>& point) {
    if (conic.nvars() != 3 || conic.degree() != 2)
        throw std::invalid_argument("parametrize_conic: expects a plane conic");
    if (!conic.evaluate(point).is_zero())
        throw std::invalid_argument("parametrize_conic: point is not on the conic");
    const Matrix<Cyclo> g = quadratic_gram(conic, 3);

    int pivot = -1;
    for (int i = 0; i < 3 && pivot < 0; ++i)
        if (!point[i].is_zero()) pivot = i;
    std::vector<std::vector<Cyclo>> dirs;
    for (int i = 0; i < 3; ++i) {
        if (i == pivot) continue;
        std::vector<Cyclo> e(3, Cyclo(0));
        e[i] = Cyclo(1);
        dirs.push_back(std::move(e));
    }

    // Second intersection of the line point + u * D with D = s dirs[0] + t dirs[1]:
    // the map is Q(D) * point - B(point, D) * D, with B the polar form of Q.
    auto q_of = [&](const std::vector<Cyclo>& x, const std::vector<Cyclo>& y) {
        Cyclo r(0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r += x[i] * g(i, j) * y[j];
        return r;
    };
    const Cyclo two(2);
    MultiPoly<Cyclo> qd(2), bpd(2);
    qd.add_term({2, 0}, q_of(dirs[0], dirs[0]));
    qd.add_term({1, 1}, two * q_of(dirs[0], dirs[1]));
    qd.add_term({0, 2}, q_of(dirs[1], dirs[1]));
    bpd.add_term({1, 0}, two * q_of(point, dirs[0]));
    bpd.add_term({0, 1}, two * q_of(point, dirs[1]));
    if (bpd.is_zero()) throw std::domain_error("parametrize_conic: singular at the point");

    std::vector<MultiPoly<Cyclo>> map;
    for (int i = 0; i < 3; ++i) {
        MultiPoly<Cyclo> d(2);
        d.add_term({1, 0}, dirs[0][i]);
        d.add_term({0, 1}, dirs[1][i]);
        map.push_back(qd * MultiPoly<Cyclo>::constant(2, point[i]) - bpd * d);
    }
    if (!conic.substitute(map).is_zero())
        throw std::logic_error("parametrize_conic: image misses the conic");
    // A parametrized smooth conic spans the full space of binary quadratics.
    Matrix<Cyclo> span(3, 3);
    const Monomial mono[3] = {{2, 0}, {1, 1}, {0, 2}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) span(i, j) = map[i].coeff(mono[j]);
    if (span.rank() < 3) throw std::logic_error("parametrize_conic: degenerate map");
    return map;
}

ConicConfiguration conic_configuration(const RestrictedQuadrics& rq,
                                       const DerivedModel& model) {
    auto pt = point_on_conic(model.model);
    if (!pt) throw std::runtime_error("conic_configuration: no small rational point");
    const auto par = parametrize_conic(model.model, *pt);

    ConicConfiguration out;
    std::vector<P1Point> pts;
    auto point_id = [&](const P1Point& q) {
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (pts[i] == q) return static_cast<int>(i);
        pts.push_back(q);
        return static_cast<int>(pts.size()) - 1;
    };
    auto dehom = [](const MultiPoly<Cyclo>& b) {
        std::vector<Cyclo> c(5, Cyclo(0));
        for (const auto& [m, k] : b.terms()) c[m[0]] = k;
        return UPoly<Cyclo>(std::move(c));
    };

    // Rank-2 classes carry one triple and one simple intersection each.
    std::vector<std::pair<int, int>> class_pairs;
    std::vector<const QuadricClass*> rank3;
    std::vector<MultiPoly<Cyclo>> rank3_quartics;
    for (const auto& cls : rq.classes) {
        MultiPoly<Cyclo> quartic = cls.poly.substitute(par);
        if (quartic.is_zero())
            throw std::runtime_error("conic_configuration: class contains the conic");
        if (cls.rank == 3) {
            rank3.push_back(&cls);
            rank3_quartics.push_back(std::move(quartic));
            continue;
        }
        auto structure = multiplicity_structure(dehom(quartic), 4);
        int triple = -1, simple = -1;
        for (const auto& rc : structure) {
            P1Point p;
            if (rc.at_infinity) {
                p.inf = true;
            } else {
                if (rc.degree != 1 || !rc.root)
                    throw std::runtime_error("conic_configuration: irrational tangency");
                p.x = *rc.root;
            }
            if (rc.multiplicity == 3) triple = point_id(p);
            else if (rc.multiplicity == 1) simple = point_id(p);
        }
        if (triple < 0 || simple < 0)
            throw std::runtime_error("conic_configuration: rank-2 profile is not 3+1");
        class_pairs.push_back({triple, simple});
    }
    out.distinct_points = static_cast<int>(pts.size());
    for (const auto& p : pts)
        if (p.inf) out.infinity_is_point = true;
    for (const auto& p : pts)
        if (!p.inf) out.points.push_back(p.x);

    // The matching: each rank-2 class pairs its triple point with its simple
    // point; the 12 classes induce each unordered pair twice.
    for (auto [a, b] : class_pairs) {
        std::pair<int, int> key{std::min(a, b), std::max(a, b)};
        if (std::find(out.matching.begin(), out.matching.end(), key) == out.matching.end())
            out.matching.push_back(key);
    }

    // Rank-3 classes cut four simple points forming two matched pairs.
    out.pair_use_count.assign(out.matching.size(), 0);
    auto value_at = [&](const MultiPoly<Cyclo>& q, const P1Point& p) {
        if (p.inf) return q.coeff({4, 0});
        return q.evaluate({p.x, Cyclo(1)});
    };
    for (std::size_t c = 0; c < rank3.size(); ++c) {
        const auto& quartic = rank3_quartics[c];
        auto prof = multiplicity_profile(dehom(quartic), 4);
        if (prof != std::vector<int>{1, 1, 1, 1})
            throw std::runtime_error("conic_configuration: rank-3 class not transverse");
        std::vector<int> roots;
        for (std::size_t i = 0; i < pts.size(); ++i)
            if (value_at(quartic, pts[i]).is_zero()) roots.push_back(static_cast<int>(i));
        if (roots.size() != 4)
            throw std::runtime_error("conic_configuration: rank-3 roots leave the 12 points");
        std::vector<int> hits;
        for (std::size_t mi = 0; mi < out.matching.size(); ++mi) {
            auto [a, b] = out.matching[mi];
            const bool ha = std::find(roots.begin(), roots.end(), a) != roots.end();
            const bool hb = std::find(roots.begin(), roots.end(), b) != roots.end();
            if (ha && hb) hits.push_back(static_cast<int>(mi));
        }
        if (hits.size() != 2)
            throw std::runtime_error("conic_configuration: roots do not pair up");
        out.rank3_pairs.push_back({hits[0], hits[1]});
        out.pair_use_count[hits[0]] += 1;
        out.pair_use_count[hits[1]] += 1;
    }

    out.moebius_match = [&] {
        // Targets: {0, inf} and {z5^k, alpha z5^k}; pair structure included.
        const Cyclo alpha = Cyclo::zeta5_pow(3) + Cyclo::zeta5_pow(2) - Cyclo(1);
        std::vector<P1Point> targets = {{false, Cyclo(0)}, {true, Cyclo(0)}};
        std::vector<std::pair<int, int>> tpairs = {{0, 1}};
        for (int k = 0; k < 5; ++k) {
            targets.push_back({false, Cyclo::zeta5_pow(k)});
            targets.push_back({false, alpha * Cyclo::zeta5_pow(k)});
            tpairs.push_back({2 + 2 * k, 3 + 2 * k});
        }
        auto coords = [](const P1Point& p) -> std::pair<Cyclo, Cyclo> {
            if (p.inf) return {Cyclo(1), Cyclo(0)};
            return {p.x, Cyclo(1)};
        };
        auto target_id = [&](const P1Point& p) {
            for (std::size_t i = 0; i < targets.size(); ++i)
                if (targets[i] == p) return static_cast<int>(i);
            return -1;
        };
        if (pts.size() != 12 || out.matching.size() != 6) return false;
        for (std::size_t mi = 0; mi < 6; ++mi)
            for (int ori = 0; ori < 2; ++ori) {
                const int xi = ori ? out.matching[mi].second : out.matching[mi].first;
                const int yi = ori ? out.matching[mi].first : out.matching[mi].second;
                auto [ux, vx] = coords(pts[xi]);
                auto [uy, vy] = coords(pts[yi]);
                for (std::size_t zi = 0; zi < 12; ++zi) {
                    if (static_cast<int>(zi) == xi || static_cast<int>(zi) == yi) continue;
                    auto [uz, vz] = coords(pts[zi]);
                    const Cyclo a0 = vx * uz - ux * vz, b0 = vy * uz - uy * vz;
                    if (a0.is_zero() || b0.is_zero()) continue;
                    for (std::size_t wi = 2; wi < targets.size(); ++wi) {
                        const Cyclo lam = targets[wi].x * b0 * a0.inverse();
                        // Rows of the Moebius matrix sending x->0, y->inf, z->w.
                        const Cyclo m00 = lam * vx, m01 = Cyclo(0) - lam * ux;
                        const Cyclo m10 = vy, m11 = Cyclo(0) - uy;
                        std::vector<int> image(12);
                        bool ok = true;
                        std::vector<bool> used(targets.size(), false);
                        for (std::size_t i = 0; i < 12 && ok; ++i) {
                            auto [u, v] = coords(pts[i]);
                            const int t = target_id(
                                normalize_p1(m00 * u + m01 * v, m10 * u + m11 * v));
                            if (t < 0 || used[t]) ok = false;
                            else { used[t] = true; image[i] = t; }
                        }
                        if (!ok) continue;
                        for (const auto& [a, b] : out.matching) {
                            std::pair<int, int> im{std::min(image[a], image[b]),
                                                   std::max(image[a], image[b])};
                            if (std::find(tpairs.begin(), tpairs.end(), im) == tpairs.end())
                                ok = false;
                        }
                        if (ok) return true;
                    }
                }
            }
        return false;
    }();
    return out;
}

namespace {

template <typename K>
Matrix<K> gram_of(const MultiPoly<K>& q, int d, const K& half) {
    Matrix<K> g(d, d);
    for (const auto& [m, c] : q.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < d; ++v) {
            if (m[v] == 2) i = j = v;
            if (m[v] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) {
            g(i, i) = c;
        } else {
            g(i, j) = g(i, j) + half * c;
            g(j, i) = g(j, i) + half * c;
        }
    }
    return g;
}

// Homogeneous pieces of f at an affine point of the chart x_chart = 1:
// parts[k] holds the degree-k part in the local coordinates (the non-chart
// variables shifted to the point).
template <typename K>
std::vector<MultiPoly<K>> local_parts(const MultiPoly<K>& f, const std::vector<K>& pt,
                                      int chart) {
    const int n = f.nvars(), loc = n - 1;
    std::vector<MultiPoly<K>> sub;
    int k = 0;
    for (int v = 0; v < n; ++v) {
        if (v == chart) {
            sub.push_back(MultiPoly<K>::constant(loc, K(1)));
        } else {
            sub.push_back(MultiPoly<K>::constant(loc, pt[v]) + MultiPoly<K>::variable(loc, k));
            ++k;
        }
    }
    MultiPoly<K> g = f.substitute(sub);
    std::vector<MultiPoly<K>> parts(f.degree() + 1, MultiPoly<K>(loc));
    for (const auto& [m, c] : g.terms()) parts[total_degree(m)].add_term(m, c);
    return parts;
}

// A plane cubic cone splits as three independent lines exactly when its
// Hessian determinant is a nonzero multiple of the cubic itself.
template <typename K>
bool cubic_is_triangle(const MultiPoly<K>& c3) {
    if (c3.is_zero() || c3.degree() != 3 || c3.nvars() != 3) return false;
    MultiPoly<K> h[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = c3.derivative(i).derivative(j);
    MultiPoly<K> det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                       h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    if (det.is_zero()) return false;
    return det.monic() == c3.monic();
}

}  // namespace

SingularLocusReport sextic_singular_locus(const RestrictedQuadrics& rq,
                                          const DerivedModel& model, std::uint64_t p) {
    if (p % 20 != 1) throw std::invalid_argument("sextic_singular_locus: need p = 1 mod 20");
    const std::uint64_t root = phi20_roots_mod_p(p)[0];
    const MultiPoly<Fp> f = reduce_mod_p(model.model, p, root);
    std::vector<MultiPoly<Fp>> grad;
    for (int v = 0; v < 4; ++v) grad.push_back(f.derivative(v));
    std::vector<MultiPoly<Fp>> quads;
    for (const auto& cls : rq.classes) quads.push_back(reduce_mod_p(cls.poly, p, root));

    SingularLocusReport rep;
    rep.p = p;
    const Fp half = Fp(invmod64(2, p), p);
    // Representatives of P^3(F_p): first nonzero coordinate normalized to 1.
    for (int lead = 0; lead < 4; ++lead) {
        const int free = 3 - lead;
        std::vector<std::uint64_t> tail(free, 0);
        bool done = false;
        while (!done) {
            std::vector<Fp> pt(4, Fp(0, p));
            pt[lead] = Fp(1, p);
            for (int i = 0; i < free; ++i) pt[lead + 1 + i] = Fp(tail[i], p);
            if (f.evaluate(pt).is_zero()) {
                bool singular = true;
                for (int v = 0; v < 4 && singular; ++v)
                    if (!grad[v].evaluate(pt).is_zero()) singular = false;
                if (singular) {
                    SingularPoint sp;
                    for (const auto& c : pt) sp.coords.push_back(c.v);
                    auto parts = local_parts(f, pt, lead);
                    if (parts[2].is_zero()) {
                        sp.is_cusp = cubic_is_triangle(parts[3]);
                        if (!sp.is_cusp)
                            throw std::runtime_error(
                                "sextic_singular_locus: cubic cone is not a triangle");
                        rep.cusps += 1;
                    } else {
                        const int r = gram_of(parts[2], 3, half).rank();
                        if (r != 3)
                            throw std::runtime_error(
                                "sextic_singular_locus: quadratic cone rank is not 3");
                        rep.nodes += 1;
                    }
                    for (const auto& q : quads)
                        if (q.evaluate(pt).is_zero()) sp.incidence += 1;
                    rep.points.push_back(std::move(sp));
                }
            }
            // Odometer over the free coordinates.
            int i = free - 1;
            for (; i >= 0; --i) {
                if (++tail[i] < p) break;
                tail[i] = 0;
            }
            if (i < 0) done = true;
        }
    }
    return rep;
}

namespace {

// The published symmetric sextic on the hyperplane s1 = 0, pushed down to
// four variables by eliminating x5 = -(x1 + x2 + x3 + x4).
MultiPoly<Cyclo> symmetric_sextic_4var() {
    const int n = 5;
    MultiPoly<Cyclo> e2(n), e3(n), e4(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Monomial m(n, 0);
            m[a] = m[b] = 1;
            e2.add_term(m, Cyclo(1));
            for (int c = b + 1; c < n; ++c) {
                Monomial m3 = m;
                m3[c] = 1;
                e3.add_term(m3, Cyclo(1));
                for (int d = c + 1; d < n; ++d) {
                    Monomial m4 = m3;
                    m4[d] = 1;
                    e4.add_term(m4, Cyclo(1));
                }
            }
        }
    MultiPoly<Cyclo> f5 = e2 * e2 * e2 + Cyclo(10) * (e3 * e3) - Cyclo(20) * (e2 * e4);
    std::vector<MultiPoly<Cyclo>> sub;
    MultiPoly<Cyclo> last(4);
    for (int i = 0; i < 4; ++i) {
        sub.push_back(MultiPoly<Cyclo>::variable(4, i));
        last = last - MultiPoly<Cyclo>::variable(4, i);
    }
    sub.push_back(last);
    return f5.substitute(sub);
}

// Orbit of a projective 5-tuple under coordinate permutations.
int projective_orbit_size(const std::vector<Cyclo>& rep) {
    std::vector<std::vector<Cyclo>> seen;
    std::array<int, 5> perm = {0, 1, 2, 3, 4};
    do {
        std::vector<Cyclo> img(5);
        for (int i = 0; i < 5; ++i) img[i] = rep[perm[i]];
        int lead = 0;
        while (img[lead].is_zero()) ++lead;
        const Cyclo inv = img[lead].inverse();
        for (auto& c : img) c = c * inv;
        if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<int>(seen.size());
}

}  // namespace

S5Report s5_model_checks() {
    const MultiPoly<Cyclo> f = symmetric_sextic_4var();
    S5Report rep;

    const std::vector<Cyclo> p0 = {Cyclo(-4), Cyclo(1), Cyclo(1), Cyclo(1)};
    std::vector<Cyclo> q0;
    for (int i = 0; i < 4; ++i) q0.push_back(Cyclo::zeta5_pow(i));

    rep.grad_zero_p0 = rep.grad_zero_q0 = true;
    for (int v = 0; v < 4; ++v) {
        if (!f.derivative(v).evaluate(p0).is_zero()) rep.grad_zero_p0 = false;
        if (!f.derivative(v).evaluate(q0).is_zero()) rep.grad_zero_q0 = false;
    }

    auto parts_p0 = local_parts(f, p0, 1);
    rep.p0_quadratic_zero = parts_p0[2].is_zero();
    rep.p0_cone_triangle = cubic_is_triangle(parts_p0[3]);

    auto parts_q0 = local_parts(f, q0, 0);
    rep.q0_cone_rank = gram_of(parts_q0[2], 3, Cyclo(Rational(1, 2))).rank();

    rep.orbit_p0 = projective_orbit_size(
        {Cyclo(-4), Cyclo(1), Cyclo(1), Cyclo(1), Cyclo(1)});
    std::vector<Cyclo> q0full;
    for (int i = 0; i < 5; ++i) q0full.push_back(Cyclo::zeta5_pow(i));
    rep.orbit_q0 = projective_orbit_size(q0full);
    return rep;
}

namespace {

// x_i -> x_{perm[i]} on 4-variable polynomials living on the hyperplane
// x1 + ... + x5 = 0; index 4 stands for the eliminated fifth coordinate.
MultiPoly<Cyclo> permute_on_hyperplane(const MultiPoly<Cyclo>& f,
                                       const std::array<int, 5>& perm) {
    MultiPoly<Cyclo> last(4);
    for (int i = 0; i < 4; ++i) last = last - MultiPoly<Cyclo>::variable(4, i);
    std::vector<MultiPoly<Cyclo>> sub;
    for (int i = 0; i < 4; ++i)
        sub.push_back(perm[i] < 4 ? MultiPoly<Cyclo>::variable(4, perm[i]) : last);
    return f.substitute(sub);
}

std::vector<Monomial> degree2_monomials4() {
    std::vector<Monomial> out;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            Monomial m(4, 0);
            m[i] += 1;
            m[j] += 1;
            out.push_back(m);
        }
    return out;
}

// Signed triple products of the alternating cubic; 1-based index triples.
struct AltTerm {
    int a, b, c, sign;
};

const std::vector<AltTerm>& alternating_terms() {
    static const std::vector<AltTerm> terms = {
        {1, 2, 3, +1}, {1, 2, 4, -1}, {1, 2, 5, -1}, {1, 2, 6, +1}, {1, 3, 4, +1},
        {1, 3, 5, -1}, {1, 3, 6, -1}, {1, 4, 5, +1}, {1, 4, 6, -1}, {1, 5, 6, +1},
        {2, 3, 4, -1}, {2, 3, 5, +1}, {2, 3, 6, -1}, {2, 4, 5, +1}, {2, 4, 6, +1},
        {2, 5, 6, -1}, {3, 4, 5, -1}, {3, 4, 6, +1}, {3, 5, 6, +1}, {4, 5, 6, -1}};
    return terms;
}

}  // namespace

CanonicalMapReport canonical_map_check(std::uint64_t p) {
    CanonicalMapReport rep;
    const MultiPoly<Cyclo> f = symmetric_sextic_4var();

    // The five cusps, pushed down to four coordinates.
    std::vector<std::vector<Cyclo>> cusps;
    for (int k = 0; k < 4; ++k) {
        std::vector<Cyclo> c(4, Cyclo(1));
        c[k] = Cyclo(-4);
        cusps.push_back(std::move(c));
    }
    cusps.push_back(std::vector<Cyclo>(4, Cyclo(1)));

    const auto monos = degree2_monomials4();
    auto coeff_vec = [&](const MultiPoly<Cyclo>& q) {
        std::vector<Cyclo> v;
        for (const auto& m : monos) v.push_back(q.coeff(m));
        return v;
    };
    Matrix<Cyclo> cond(5, static_cast<int>(monos.size()));
    for (int i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < monos.size(); ++j) {
            MultiPoly<Cyclo> mono(4);
            mono.add_term(monos[j], Cyclo(1));
            cond(i, static_cast<int>(j)) = mono.evaluate(cusps[i]);
        }
    auto ker = cond.kernel();
    rep.cusp_quadric_dim = static_cast<int>(ker.size());

    std::vector<MultiPoly<Cyclo>> basis;
    for (const auto& v : ker) {
        MultiPoly<Cyclo> q(4);
        for (std::size_t j = 0; j < monos.size(); ++j) q.add_term(monos[j], v[j]);
        basis.push_back(std::move(q));
    }

    // The line fixed by an order-20 Frobenius subgroup (a 5-cycle and the
    // normalizing 4-cycle i -> 2i mod 5); its orbit has the six elements
    // indexing the coordinates of the canonical model.
    const std::array<int, 5> stab1 = {1, 2, 3, 4, 0}, stab2 = {1, 3, 0, 2, 4};
    const int nb = static_cast<int>(basis.size());
    std::vector<std::vector<Cyclo>> fixker;
    // The subgroup fixes the line only up to a character; the 4-cycle may act
    // by -1 when the representation is the sign twist.
    for (const Cyclo& chi : {Cyclo(1), Cyclo(-1)}) {
        Matrix<Cyclo> fix(2 * static_cast<int>(monos.size()), nb);
        for (int j = 0; j < nb; ++j) {
            auto d1 = coeff_vec(permute_on_hyperplane(basis[j], stab1) - basis[j]);
            auto d2 = coeff_vec(permute_on_hyperplane(basis[j], stab2) -
                                MultiPoly<Cyclo>::constant(4, chi) * basis[j]);
            for (std::size_t r = 0; r < monos.size(); ++r) {
                fix(static_cast<int>(r), j) = d1[r];
                fix(static_cast<int>(monos.size() + r), j) = d2[r];
            }
        }
        fixker = fix.kernel();
        if (fixker.size() == 1) break;
    }
    if (fixker.size() != 1)
        throw std::runtime_error("canonical_map_check: stabilizer-fixed space not a line");
    MultiPoly<Cyclo> z1(4);
    for (int j = 0; j < nb; ++j)
        z1 = z1 + MultiPoly<Cyclo>::constant(4, fixker[0][j]) * basis[j];
    z1 = z1.monic();

    // Its orbit under the coordinate S_5.
    std::vector<MultiPoly<Cyclo>> z;
    std::array<int, 5> perm = {0, 1, 2, 3, 4};
    do {
        MultiPoly<Cyclo> img = permute_on_hyperplane(z1, perm).monic();
        if (std::find(z.begin(), z.end(), img) == z.end()) z.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (z.size() != 6)
        throw std::runtime_error("canonical_map_check: orbit size is not six");

    Matrix<Cyclo> span(6, static_cast<int>(monos.size()));
    for (int i = 0; i < 6; ++i) {
        auto v = coeff_vec(z[i]);
        for (std::size_t j = 0; j < monos.size(); ++j) span(i, static_cast<int>(j)) = v[j];
    }
    rep.six_orbit_spans = (span.rank() == rep.cusp_quadric_dim);

    // Rescale so that the six quadrics sum to zero identically.
    Matrix<Cyclo> sum(static_cast<int>(monos.size()), 6);
    for (int i = 0; i < 6; ++i) {
        auto v = coeff_vec(z[i]);
        for (std::size_t j = 0; j < monos.size(); ++j) sum(static_cast<int>(j), i) = v[j];
    }
    auto lam = sum.kernel();
    if (lam.size() == 1) {
        MultiPoly<Cyclo> total(4);
        for (int i = 0; i < 6; ++i) {
            z[i] = MultiPoly<Cyclo>::constant(4, lam[0][i]) * z[i];
            total = total + z[i];
        }
        rep.sum_identically_zero = total.is_zero();
    }

    // Induced permutations of the six quadrics under the published
    // generators of S_5.
    auto induced = [&](const std::array<int, 5>& g) {
        std::array<int, 6> sigma;
        for (int i = 0; i < 6; ++i) {
            MultiPoly<Cyclo> img = permute_on_hyperplane(z[i], g).monic();
            int j = 0;
            while (j < 6 && !(z[j].monic() == img)) ++j;
            if (j == 6) throw std::runtime_error("canonical_map_check: orbit not permuted");
            sigma[i] = j;
        }
        return sigma;
    };
    const std::array<int, 5> g12 = {1, 0, 2, 3, 4}, gcyc = {4, 0, 1, 2, 3};
    const auto s12 = induced(g12), scyc = induced(gcyc);
    rep.transposition_fixed_point_free = true;
    for (int i = 0; i < 6; ++i)
        if (s12[i] == i || s12[s12[i]] != i) rep.transposition_fixed_point_free = false;

    // Search for a relabeling conjugating both induced permutations to the
    // published images (1 4)(2 3)(5 6) and (2 6 5 4 3).
    const std::array<int, 6> t12 = {3, 2, 1, 0, 5, 4}, tcyc = {0, 5, 1, 2, 3, 4};
    std::array<int, 6> rho = {0, 1, 2, 3, 4, 5}, rho_found{};
    do {
        std::array<int, 6> rinv;
        for (int i = 0; i < 6; ++i) rinv[rho[i]] = i;
        bool ok = true;
        for (int i = 0; i < 6 && ok; ++i) {
            if (rho[s12[rinv[i]]] != t12[i]) ok = false;
            if (ok && rho[scyc[rinv[i]]] != tcyc[i]) ok = false;
        }
        if (ok) {
            rep.embedding_matches = true;
            rho_found = rho;
            break;
        }
    } while (std::next_permutation(rho.begin(), rho.end()));

    // Exact containment of the two cubics in the sextic's ideal.
    MultiPoly<Cyclo> sum_cubes(4);
    for (int i = 0; i < 6; ++i) sum_cubes = sum_cubes + z[i] * z[i] * z[i];
    auto in_ideal = [&](const MultiPoly<Cyclo>& g) {
        return g.is_zero() || g.divisible_by(f);
    };
    rep.cubic_sum_vanishes = in_ideal(sum_cubes);
    if (rep.embedding_matches) {
        std::array<int, 6> rinv;
        for (int i = 0; i < 6; ++i) rinv[rho_found[i]] = i;
        MultiPoly<Cyclo> alt(4);
        for (const auto& t : alternating_terms()) {
            MultiPoly<Cyclo> prod =
                z[rinv[t.a - 1]] * z[rinv[t.b - 1]] * z[rinv[t.c - 1]];
            alt = (t.sign > 0) ? alt + prod : alt - prod;
        }
        rep.alternating_cubic_vanishes = in_ideal(alt);
    }

    // Sampled confirmation over F_p on the sextic surface itself.
    {
        // Everything here has rational coefficients, so no root of Phi_20 is
        // needed; p only has to keep the 24 nodes rational (p = 1 mod 5).
        const MultiPoly<Fp> fp = reduce_mod_p(f, p, 0);
        std::vector<MultiPoly<Fp>> zp;
        for (const auto& q : z) zp.push_back(reduce_mod_p(q, p, 0));
        std::array<int, 6> label;
        for (int i = 0; i < 6; ++i) label[i] = i;
        if (rep.embedding_matches)
            for (int i = 0; i < 6; ++i) label[rho_found[i]] = i;
        for (int lead = 0; lead < 4; ++lead) {
            const int free = 3 - lead;
            std::vector<std::uint64_t> tail(free, 0);
            bool done = false;
            while (!done) {
                std::vector<Fp> pt(4, Fp(0, p));
                pt[lead] = Fp(1, p);
                for (int i = 0; i < free; ++i) pt[lead + 1 + i] = Fp(tail[i], p);
                if (fp.evaluate(pt).is_zero()) {
                    std::vector<Fp> zv;
                    for (const auto& q : zp) zv.push_back(q.evaluate(pt));
                    Fp cube(0, p), altv(0, p);
                    for (const auto& v : zv) cube = cube + v * v * v;
                    for (const auto& t : alternating_terms()) {
                        Fp prod = zv[label[t.a - 1]] * zv[label[t.b - 1]] *
                                  zv[label[t.c - 1]];
                        altv = (t.sign > 0) ? altv + prod : altv - prod;
                    }
                    if (!cube.is_zero()) rep.cubic_sum_vanishes = false;
                    if (rep.embedding_matches && !altv.is_zero())
                        rep.alternating_cubic_vanishes = false;
                    rep.points_checked += 1;
                }
                int i = free - 1;
                for (; i >= 0; --i) {
                    if (++tail[i] < p) break;
                    tail[i] = 0;
                }
                if (i < 0) done = true;
            }
        }
    }

    // Singular points of the published (3,3) complete intersection, with the
    // sixth coordinate eliminated against z1 + ... + z6 = 0.
    {
        MultiPoly<Cyclo> w6(5);
        for (int i = 0; i < 5; ++i) w6 = w6 - MultiPoly<Cyclo>::variable(5, i);
        std::vector<MultiPoly<Cyclo>> sub;
        for (int i = 0; i < 5; ++i) sub.push_back(MultiPoly<Cyclo>::variable(5, i));
        sub.push_back(w6);
        MultiPoly<Cyclo> c1(6), c2(6);
        for (int i = 0; i < 6; ++i) {
            MultiPoly<Cyclo> v = MultiPoly<Cyclo>::variable(6, i);
            c1 = c1 + v * v * v;
        }
        for (const auto& t : alternating_terms()) {
            MultiPoly<Cyclo> prod = MultiPoly<Cyclo>::variable(6, t.a - 1) *
                                    MultiPoly<Cyclo>::variable(6, t.b - 1) *
                                    MultiPoly<Cyclo>::variable(6, t.c - 1);
            c2 = (t.sign > 0) ? c2 + prod : c2 - prod;
        }
        const MultiPoly<Fp> d1 = reduce_mod_p(c1.substitute(sub), p, 0);
        const MultiPoly<Fp> d2 = reduce_mod_p(c2.substitute(sub), p, 0);
        std::vector<MultiPoly<Fp>> j1, j2;
        for (int v = 0; v < 5; ++v) {
            j1.push_back(d1.derivative(v));
            j2.push_back(d2.derivative(v));
        }
        for (int lead = 0; lead < 5; ++lead) {
            const int free = 4 - lead;
            std::vector<std::uint64_t> tail(free, 0);
            bool done = false;
            while (!done) {
                std::vector<Fp> pt(5, Fp(0, p));
                pt[lead] = Fp(1, p);
                for (int i = 0; i < free; ++i) pt[lead + 1 + i] = Fp(tail[i], p);
                if (d1.evaluate(pt).is_zero() && d2.evaluate(pt).is_zero()) {
                    std::vector<Fp> r1, r2;
                    for (int v = 0; v < 5; ++v) {
                        r1.push_back(j1[v].evaluate(pt));
                        r2.push_back(j2[v].evaluate(pt));
                    }
                    bool rank_low = true;
                    for (int a = 0; a < 5 && rank_low; ++a)
                        for (int b = a + 1; b < 5 && rank_low; ++b)
                            if (!(r1[a] * r2[b] - r1[b] * r2[a]).is_zero()) rank_low = false;
                    if (rank_low) rep.singular_count_33 += 1;
                }
                int i = free - 1;
                for (; i >= 0; --i) {
                    if (++tail[i] < p) break;
                    tail[i] = 0;
                }
                if (i < 0) done = true;
            }
        }
    }
    return rep;
}

namespace {

// Bidegree in the variable split (s,t) | (u,v); throws unless bihomogeneous.
std::pair<int, int> bidegree(const MultiPoly<Fp>& f) {
    int ds = -1, du = -1;
    for (const auto& [m, c] : f.terms()) {
        const int a = m[0] + m[1], b = m[2] + m[3];
        if (ds < 0) { ds = a; du = b; }
        else if (a != ds || b != du)
            throw std::logic_error("bidegree: not bihomogeneous");
    }
    return {ds, du};
}

MultiPoly<Fp> squarefree_part(const MultiPoly<Fp>& f, std::mt19937_64& rng) {
    MultiPoly<Fp> g = f;
    for (int v = 0; v < f.nvars(); ++v) {
        MultiPoly<Fp> d = f.derivative(v);
        if (!d.is_zero()) g = gcd_mod_p(g, d, rng);
    }
    return f.exact_divide(g.monic());
}

// Hyperbolic parametrization of a smooth quadric in P^3 over F_p: returns the
// four bilinear components of P^1 x P^1 -> quadric in the variables
// (s, t, u, v), or nothing when the quadric has no F_p-lines.
std::optional<std::vector<MultiPoly<Fp>>> split_quadric_mod_p(const MultiPoly<Fp>& q,
                                                              std::uint64_t p) {
    const Fp half = Fp(invmod64(2, p), p);
    const Matrix<Fp> g = gram_of(q, 4, half);
    auto quad = [&](const std::vector<Fp>& x) {
        Fp r(0, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r = r + x[i] * g(i, j) * x[j];
        return r;
    };
    auto polar = [&](const std::vector<Fp>& x, const std::vector<Fp>& y) {
        Fp r(0, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r = r + x[i] * g(i, j) * y[j];
        return r + r;
    };
    auto sqrt_mod = [&](Fp a) -> std::optional<Fp> {
        for (std::uint64_t r = 0; r <= p / 2; ++r)
            if (mulmod64(r, r, p) == a.v) return Fp(r, p);
        return std::nullopt;
    };

    // An isotropic vector, by scanning representatives of P^3(F_p).
    std::vector<Fp> e1;
    for (int lead = 0; lead < 4 && e1.empty(); ++lead) {
        std::vector<std::uint64_t> tail(3 - lead, 0);
        bool done = false;
        while (!done && e1.empty()) {
            std::vector<Fp> pt(4, Fp(0, p));
            pt[lead] = Fp(1, p);
            for (std::size_t i = 0; i < tail.size(); ++i) pt[lead + 1 + i] = Fp(tail[i], p);
            if (quad(pt).is_zero()) e1 = pt;
            int i = static_cast<int>(tail.size()) - 1;
            for (; i >= 0; --i) {
                if (++tail[i] < p) break;
                tail[i] = 0;
            }
            if (i < 0) done = true;
        }
    }
    if (e1.empty()) return std::nullopt;

    std::vector<Fp> f1;
    for (int i = 0; i < 4 && f1.empty(); ++i) {
        std::vector<Fp> e(4, Fp(0, p));
        e[i] = Fp(1, p);
        if (!polar(e1, e).is_zero()) f1 = e;
    }
    if (f1.empty()) return std::nullopt;  // degenerate quadric
    {
        const Fp c = quad(f1) / polar(e1, f1);
        for (int i = 0; i < 4; ++i) f1[i] = f1[i] - c * e1[i];
        const Fp inv = polar(e1, f1).inverse();
        for (int i = 0; i < 4; ++i) f1[i] = f1[i] * inv;
    }

    // Basis of the orthogonal complement of the hyperbolic plane.
    Matrix<Fp> ortho(2, 4);
    for (int j = 0; j < 4; ++j) {
        Fp a(0, p), b(0, p);
        for (int i = 0; i < 4; ++i) {
            a = a + e1[i] * g(i, j);
            b = b + f1[i] * g(i, j);
        }
        ortho(0, j) = a + a;
        ortho(1, j) = b + b;
    }
    auto comp = ortho.kernel();
    if (comp.size() != 2) return std::nullopt;
    std::vector<Fp> g1 = comp[0], g2 = comp[1];

    // Split the residual binary form a r^2 + b r + c.
    const Fp a = quad(g1), b = polar(g1, g2), c = quad(g2);
    std::vector<Fp> e2(4, Fp(0, p));
    if (a.is_zero()) {
        e2 = g1;
    } else {
        auto s = sqrt_mod(b * b - Fp(4, p) * a * c);
        if (!s) return std::nullopt;  // quadric is anisotropic in this plane
        const Fp r = (*s - b) / (a + a);
        for (int i = 0; i < 4; ++i) e2[i] = g1[i] * r + g2[i];
    }
    std::vector<Fp> f2 = polar(e2, g1).is_zero() ? g2 : g1;
    {
        const Fp bb = polar(e2, f2);
        if (bb.is_zero()) return std::nullopt;
        const Fp cc = quad(f2) / bb;
        for (int i = 0; i < 4; ++i) f2[i] = f2[i] - cc * e2[i];
        const Fp inv = (Fp(0, p) - polar(e2, f2)).inverse();
        for (int i = 0; i < 4; ++i) f2[i] = f2[i] * inv;
    }

    // Q(su e1 + sv e2 + tu f2 + tv f1) = (su)(tv) - (sv)(tu) = 0.
    std::vector<MultiPoly<Fp>> map;
    const Monomial su = {1, 0, 1, 0}, sv = {1, 0, 0, 1}, tu = {0, 1, 1, 0}, tv = {0, 1, 0, 1};
    for (int i = 0; i < 4; ++i) {
        MultiPoly<Fp> m(4);
        m.add_term(su, e1[i]);
        m.add_term(sv, e2[i]);
        m.add_term(tu, f2[i]);
        m.add_term(tv, f1[i]);
        map.push_back(std::move(m));
    }
    if (!q.substitute(map).is_zero())
        throw std::logic_error("split_quadric_mod_p: image misses the quadric");
    return map;
}

// The component of bidegree (1,2) of a bihomogeneous (3,3) form, found by
// fitting its graph through one intersection point per fiber and certifying
// with an exact division.
std::optional<std::pair<MultiPoly<Fp>, MultiPoly<Fp>>> split_bidegree_33(
    const MultiPoly<Fp>& g33, std::uint64_t p) {
    // Fibers u = u0 (v = 1): lists of cubic roots (s : t).
    std::vector<std::array<Fp, 2>> fiber;                  // (u0, 1)
    std::vector<std::vector<std::array<Fp, 2>>> roots;     // candidate (s, t)
    for (std::uint64_t u0 = 0; u0 < p && fiber.size() < 6; ++u0) {
        std::vector<Fp> cf(4, Fp(0, p));  // coefficient of s^i t^(3-i)
        for (const auto& [m, c] : g33.terms()) {
            Fp t = c;
            for (int e = 0; e < m[2]; ++e) t = t * Fp(u0, p);
            cf[m[0]] = cf[m[0]] + t;
        }
        if (cf[0].is_zero() && cf[1].is_zero() && cf[2].is_zero() && cf[3].is_zero())
            continue;
        std::vector<std::array<Fp, 2>> rs;
        for (std::uint64_t s0 = 0; s0 < p; ++s0) {
            Fp val(0, p), sp(1, p);
            for (int i = 0; i < 4; ++i) {
                val = val + cf[i] * sp;
                sp = sp * Fp(s0, p);
            }
            if (val.is_zero()) rs.push_back({Fp(s0, p), Fp(1, p)});
        }
        if (cf[3].is_zero()) rs.push_back({Fp(1, p), Fp(0, p)});
        if (rs.empty()) continue;
        fiber.push_back({Fp(u0, p), Fp(1, p)});
        roots.push_back(std::move(rs));
    }
    if (fiber.size() < 6) return std::nullopt;

    // C1 = sum a_ij s^(1-i) t^i u^(2-j) v^j; one root per fiber lies on it.
    std::vector<std::size_t> pick(6, 0);
    while (true) {
        Matrix<Fp> sys(6, 6);
        for (int r = 0; r < 6; ++r) {
            const auto [s0, t0] = roots[r][pick[r]];
            const auto [u0, v0] = fiber[r];
            int col = 0;
            for (int i = 0; i <= 1; ++i)
                for (int j = 0; j <= 2; ++j) {
                    Fp val = (i == 0 ? s0 : t0);
                    for (int e = 0; e < 2 - j; ++e) val = val * u0;
                    for (int e = 0; e < j; ++e) val = val * v0;
                    sys(r, col++) = val;
                }
        }
        for (const auto& vec : sys.kernel()) {
            MultiPoly<Fp> c1(4);
            int col = 0;
            for (int i = 0; i <= 1; ++i)
                for (int j = 0; j <= 2; ++j) {
                    c1.add_term({1 - i, i, 2 - j, j}, vec[col]);
                    ++col;
                }
            if (c1.is_zero() || !g33.divisible_by(c1)) continue;
            MultiPoly<Fp> c2 = g33.exact_divide(c1);
            if (bidegree(c1) == std::pair<int, int>{1, 2} &&
                bidegree(c2) == std::pair<int, int>{2, 1})
                return std::pair{c1.monic(), c2.monic()};
        }
        int r = 5;
        for (; r >= 0; --r) {
            if (++pick[r] < roots[r].size()) break;
            pick[r] = 0;
        }
        if (r < 0) break;
    }
    return std::nullopt;
}

// Distinct P^1(F_p) roots of a binary form in the (u, v) slots.
int distinct_uv_roots(const MultiPoly<Fp>& form, std::uint64_t p) {
    int count = 0;
    for (std::uint64_t r = 0; r <= p; ++r) {
        const std::vector<Fp> pt = {Fp(0, p), Fp(0, p),
                                    r < p ? Fp(r, p) : Fp(1, p),
                                    r < p ? Fp(1, p) : Fp(0, p)};
        if (form.evaluate(pt).is_zero()) ++count;
    }
    return count;
}

// Singular points of a curve on P^1 x P^1 over F_p, with a node check on the
// local quadratic part.
std::pair<int, int> curve_singularities(const MultiPoly<Fp>& d, std::uint64_t p) {
    int singular = 0, nodes = 0;
    const Fp half = Fp(invmod64(2, p), p);
    auto points1 = [&](auto&& fn) {
        for (std::uint64_t r = 0; r <= p; ++r)
            fn(r < p ? Fp(r, p) : Fp(1, p), r < p ? Fp(1, p) : Fp(0, p));
    };
    points1([&](Fp s0, Fp t0) {
        points1([&](Fp u0, Fp v0) {
            const std::vector<Fp> pt = {s0, t0, u0, v0};
            if (!d.evaluate(pt).is_zero()) return;
            for (int v = 0; v < 4; ++v)
                if (!d.derivative(v).evaluate(pt).is_zero()) return;
            ++singular;
            // Local expansion in the affine chart around the point.
            std::vector<MultiPoly<Fp>> sub;
            const bool tchart = !t0.is_zero(), vchart = !v0.is_zero();
            sub.push_back(tchart ? MultiPoly<Fp>::constant(2, s0 / t0) +
                                       MultiPoly<Fp>::variable(2, 0)
                                 : MultiPoly<Fp>::constant(2, Fp(1, p)));
            sub.push_back(tchart ? MultiPoly<Fp>::constant(2, Fp(1, p))
                                 : MultiPoly<Fp>::constant(2, t0 / s0) +
                                       MultiPoly<Fp>::variable(2, 0));
            sub.push_back(vchart ? MultiPoly<Fp>::constant(2, u0 / v0) +
                                       MultiPoly<Fp>::variable(2, 1)
                                 : MultiPoly<Fp>::constant(2, Fp(1, p)));
            sub.push_back(vchart ? MultiPoly<Fp>::constant(2, Fp(1, p))
                                 : MultiPoly<Fp>::constant(2, v0 / u0) +
                                       MultiPoly<Fp>::variable(2, 1));
            MultiPoly<Fp> local = d.substitute(sub);
            MultiPoly<Fp> part2(2);
            for (const auto& [m, c] : local.terms())
                if (total_degree(m) == 2) part2.add_term(m, c);
            if (!part2.is_zero() && gram_of(part2, 2, half).rank() == 2) ++nodes;
        });
    });
    return {singular, nodes};
}

}  // namespace

QuadricCurveReport quadric_intersection_curves(const RestrictedQuadrics& rq,
                                               const DerivedModel& model,
                                               const MultiPoly<Cyclo>& fj_restricted,
                                               std::uint64_t p) {
    if (p % 20 != 1)
        throw std::invalid_argument("quadric_intersection_curves: need p = 1 mod 20");
    const std::uint64_t root = phi20_roots_mod_p(p)[0];
    const MultiPoly<Fp> sextic = reduce_mod_p(model.model, p, root);
    std::mt19937_64 rng(p);

    QuadricCurveReport rep;
    rep.p = p;

    // A type-10 quadric with an F_p-split parametrization.
    std::optional<std::vector<MultiPoly<Fp>>> par;
    for (const auto& cls : rq.classes) {
        if (cls.members.size() != 10) continue;
        par = split_quadric_mod_p(reduce_mod_p(cls.poly, p, root), p);
        if (par) break;
    }
    if (!par)
        throw std::runtime_error("quadric_intersection_curves: no split type-10 quadric");

    MultiPoly<Fp> pull = sextic.substitute(*par);
    if (bidegree(pull) != std::pair<int, int>{6, 6})
        throw std::runtime_error("quadric_intersection_curves: pullback is not (6,6)");
    MultiPoly<Fp> g33 = squarefree_part(pull, rng).monic();
    MultiPoly<Fp> c1, c2;
    if (bidegree(g33) == std::pair<int, int>{3, 3} &&
        pull.monic() == (g33 * g33).monic()) {
        if (auto parts = split_bidegree_33(g33, p)) {
            c1 = parts->first;
            c2 = parts->second;
            rep.type10_factors = pull.monic() == (c1 * c1 * c2 * c2).monic();
        }
    }
    if (rep.type10_factors) {
        // Res_(s,t)(C1, C2) with C1 = A s + B t: the quintic D B^2 - E A B + F A^2.
        MultiPoly<Fp> A(4), B(4), D(4), E(4), F(4);
        for (const auto& [m, c] : c1.terms())
            (m[0] == 1 ? A : B).add_term({0, 0, m[2], m[3]}, c);
        for (const auto& [m, c] : c2.terms()) {
            if (m[0] == 2) D.add_term({0, 0, m[2], m[3]}, c);
            else if (m[0] == 1) E.add_term({0, 0, m[2], m[3]}, c);
            else F.add_term({0, 0, m[2], m[3]}, c);
        }
        MultiPoly<Fp> res = D * B * B - E * A * B + F * A * A;
        rep.resultant_distinct_roots = distinct_uv_roots(res, p);
    }

    // The Schottky pullback on the same parametrization.
    {
        MultiPoly<Fp> fj = reduce_mod_p(fj_restricted, p, root).substitute(*par);
        if (bidegree(fj) != std::pair<int, int>{16, 16})
            throw std::runtime_error("quadric_intersection_curves: F_J pullback degree");
        MultiPoly<Fp> resid = fj;
        rep.fj_divisible = true;
        for (const auto* f : {&c1, &c1, &c2, &c2}) {
            if (!f->is_zero() && resid.divisible_by(*f)) resid = resid.exact_divide(*f);
            else rep.fj_divisible = false;
        }
        if (rep.fj_divisible) {
            rep.residual_bidegree = bidegree(resid);
            rep.residual_squarefree_bidegree = bidegree(squarefree_part(resid, rng));
        }
    }

    // A type-5 quadric: the pullback is a doubled (3,3) curve with nodes.
    for (const auto& cls : rq.classes) {
        if (cls.members.size() != 5) continue;
        auto par5 = split_quadric_mod_p(reduce_mod_p(cls.poly, p, root), p);
        if (!par5) continue;
        MultiPoly<Fp> pull5 = sextic.substitute(*par5);
        MultiPoly<Fp> d33 = squarefree_part(pull5, rng).monic();
        if (bidegree(d33) != std::pair<int, int>{3, 3} ||
            !(pull5.monic() == (d33 * d33).monic()))
            continue;
        rep.type5_square = true;
        rep.type5_nodes = curve_singularities(d33, p).second;
        break;
    }
    return rep;
}

JacobiReport jacobi_intersections_k2(const DerivedModel& conic,
                                     const MultiPoly<Cyclo>& fj_restricted) {
    JacobiReport rep;
    rep.conic_divides_fj =
        fj_restricted.is_zero() || fj_restricted.divisible_by(conic.model);
    return rep;
}

int jacobi_groebner_dim(const RestrictedQuadrics& rq, const DerivedModel& model,
                        const MultiPoly<Cyclo>& fj_restricted, std::uint64_t p) {
    const std::uint64_t root = phi20_roots_mod_p(p)[0];
    std::vector<MultiPoly<Fp>> gens = {reduce_mod_p(model.model, p, root),
                                       reduce_mod_p(fj_restricted, p, root)};
    for (const auto& cls : rq.classes)
        if (cls.members.size() == 5) {
            gens.push_back(reduce_mod_p(cls.poly, p, root));
            break;
        }
    int dim = -1;
    for (int chart = 0; chart < 4; ++chart) {
        std::vector<MultiPoly<Fp>> sub;
        int k = 0;
        for (int v = 0; v < 4; ++v)
            sub.push_back(v == chart ? MultiPoly<Fp>::constant(3, Fp(1, p))
                                     : MultiPoly<Fp>::variable(3, k++));
        std::vector<MultiPoly<Fp>> affine;
        for (const auto& g : gens) affine.push_back(g.substitute(sub));
        GroebnerResult res = groebner_fp(affine, 80'000'000);
        dim = std::max(dim, res.dimension);
    }
    return dim;
}

}  // namespace shv
