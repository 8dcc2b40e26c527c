// Root multiplicity structure of a univariate polynomial (or a dehomogenized
// binary form) over a characteristic-zero field, via Yun's squarefree
// decomposition. No root extraction is needed for the multiplicity profile;
// roots are reported only for the linear factors, where they are free.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "shv/upoly.hpp"

namespace shv {

// Yun: f = c * prod a_i^i with the a_i squarefree, monic, pairwise coprime.
template <typename K>
std::vector<std::pair<int, UPoly<K>>> squarefree_decomposition(const UPoly<K>& f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_decomposition: zero input");
    std::vector<std::pair<int, UPoly<K>>> out;
    if (f.degree() == 0) return out;
    UPoly<K> fp = f.derivative();
    UPoly<K> g = UPoly<K>::gcd(f, fp);
    UPoly<K> w = f / g;
    UPoly<K> y = fp / g;
    UPoly<K> z = y - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
        UPoly<K> a = UPoly<K>::gcd(w, z);
        if (a.degree() > 0) out.emplace_back(i, a);
        w = w / a;
        z = (z / a) - w.derivative();
        ++i;
    }
    return out;
}

template <typename K>
struct RootClass {
    int multiplicity;
    int degree;            // degree of the squarefree factor carrying the class
    bool at_infinity;      // degree-drop root of a binary form
    std::optional<K> root; // present only for linear factors
};

// declared_degree > deg(f) treats f as the dehomogenization of a binary form
// of that degree, so the point at infinity is a root of the deficit.
template <typename K>
std::vector<RootClass<K>> multiplicity_structure(const UPoly<K>& f, int declared_degree = -1) {
    std::vector<RootClass<K>> out;
    for (const auto& [mult, factor] : squarefree_decomposition(f)) {
        RootClass<K> rc{mult, factor.degree(), false, std::nullopt};
        if (factor.degree() == 1)
            rc.root = K(0) - factor[0];  // monic: x + c has root -c
        out.push_back(std::move(rc));
    }
    if (declared_degree > f.degree()) {
        out.push_back(RootClass<K>{declared_degree - f.degree(), 1, true, std::nullopt});
    } else if (declared_degree >= 0 && declared_degree < f.degree()) {
        throw std::invalid_argument("multiplicity_structure: declared degree below actual");
    }
    return out;
}

// Multiset of multiplicities, one entry per geometric root (closure count).
template <typename K>
std::vector<int> multiplicity_profile(const UPoly<K>& f, int declared_degree = -1) {
    std::vector<int> prof;
    for (const auto& rc : multiplicity_structure(f, declared_degree))
        for (int i = 0; i < (rc.at_infinity ? 1 : rc.degree); ++i)
            prof.push_back(rc.multiplicity);
    std::sort(prof.begin(), prof.end(), std::greater<int>());
    return prof;
}

}  // namespace shv
