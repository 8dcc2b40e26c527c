// Genus and eigenform bookkeeping for the cyclic covers, the limit covers of
// the degenerating families, and the classification of genus-4 quintic
// covers of the line.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "shv/covers.hpp"

using namespace shv;

namespace {

std::vector<std::string> form_strings(const CyclicCover& c) {
    std::vector<std::string> out;
    for (const auto& f : regular_forms(c)) out.push_back(f.str(c));
    return out;
}

}  // namespace

TEST_CASE("genus of the basic covers") {
    CHECK(cover_genus(quintic_family("C")) == 4);
    CHECK(cover_genus(quintic_family("C'")) == 4);
    CHECK(cover_genus(quintic_family("C''")) == 4);
    CHECK(cover_genus(limit_cover(5, 1, 1)) == 2);

    CyclicCover hyper;  // v^2 = quintic
    hyper.n = 2;
    hyper.branch = {{"0", 1, true}, {"1", 1, false}, {"2", 1, false},
                    {"3", 1, false}, {"4", 1, false}};
    CHECK(cover_genus(hyper) == 2);
}

TEST_CASE("eigenvalue signatures of the three families") {
    CHECK(eigen_signature(quintic_family("C")) == std::vector<int>{1, 1, 2, 3});
    CHECK(eigen_signature(quintic_family("C'")) == std::vector<int>{1, 2, 3, 4});
    CHECK(eigen_signature(quintic_family("C''")) == std::vector<int>{1, 2, 3, 4});
    // The hyperelliptic rewriting of C' carries the same action.
    CHECK(eigen_signature(quintic_family("C'_mu")) == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("explicit eigenform bases") {
    auto c = form_strings(quintic_family("C"));
    CHECK(c == std::vector<std::string>{"du/v^2", "du/v^3", "du/v^4", "u du/v^4"});

    auto cpp = form_strings(quintic_family("C''"));
    CHECK(cpp == std::vector<std::string>{"du/v", "u du/v^2", "u (u-1) du/v^3",
                                          "u^2 (u-1) du/v^4"});
}

TEST_CASE("limit covers and their eigenvalues") {
    CHECK(eigen_signature(limit_cover(5, 1, 1)) == std::vector<int>{1, 2});
    CHECK(eigen_signature(limit_cover(5, 2, 1)) == std::vector<int>{1, 3});
    CHECK(eigen_signature(limit_cover(5, 3, 1)) == std::vector<int>{1, 2});
    CHECK(form_strings(limit_cover(5, 3, 1)) ==
          std::vector<std::string>{"u du/v^3", "u^2 du/v^4"});

    CHECK_THROWS(limit_cover(5, 1, 4));  // a + b shares a factor with n
    CHECK_THROWS(limit_cover(2, 1, 1));
    CHECK_THROWS(limit_cover(4, 2, 1));
}

TEST_CASE("degenerations of family C") {
    for (const char* at : {"0", "1"}) {
        DegenerationReport rep = degeneration_report("C", at);
        CHECK(rep.degenerate_eigen == std::vector<int>{1, 3});
        CHECK(rep.limit_eigen == std::vector<int>{1, 2});
        CHECK(rep.phi_types == std::vector<int>{2, 3});
        CHECK(rep.degenerate_genus + rep.limit_genus == 4);
    }
    // At infinity the roles of the two genus-2 pieces swap.
    DegenerationReport rep = degeneration_report("C", "inf");
    CHECK(rep.degenerate_eigen == std::vector<int>{1, 2});
    CHECK(rep.limit_eigen == std::vector<int>{1, 3});
    CHECK(rep.phi_types == std::vector<int>{2, 3});
    CHECK(rep.degenerate_genus + rep.limit_genus == 4);
}

TEST_CASE("degenerations of the other two families reach the surface type") {
    for (const char* fam : {"C'", "C''"}) {
        DegenerationReport rep = degeneration_report(fam, "0");
        CHECK(rep.degenerate_eigen == std::vector<int>{3, 4});
        CHECK(rep.limit_eigen == std::vector<int>{1, 2});
        CHECK(rep.phi_types == std::vector<int>{4});
        CHECK(rep.degenerate_genus + rep.limit_genus == 4);
    }
}

TEST_CASE("deformation dimensions by signature type") {
    CHECK(deformation_dim(1) == 0);
    CHECK(deformation_dim(2) == 1);
    CHECK(deformation_dim(3) == 1);
    CHECK(deformation_dim(4) == 2);
}

TEST_CASE("eigenvalues are nontrivial and match the genus") {
    std::vector<CyclicCover> curves = {
        quintic_family("C"), quintic_family("C'"), quintic_family("C''"),
        quintic_family("C'_mu"), limit_cover(5, 1, 1), limit_cover(5, 2, 1),
        limit_cover(5, 3, 1), limit_cover(5, 1, 2), limit_cover(5, 4, 2)};
    for (const auto& c : curves) {
        std::vector<int> sig = eigen_signature(c);
        CHECK(static_cast<int>(sig.size()) == cover_genus(c));
        for (int e : sig) {
            CHECK(e >= 1);
            CHECK(e <= 4);
        }
    }
}

TEST_CASE("three classes of genus-4 quintic covers") {
    QuinticClassification cls = classify_genus4_quintics();
    REQUIRE(cls.classes.size() == 3);
    std::vector<std::string> families;
    int total_multisets = 0;
    for (const auto& c : cls.classes) {
        families.push_back(c.family);
        total_multisets += c.orbit_size;
        int sum = c.exponents[0] + c.exponents[1] + c.exponents[2] + c.exponents[3];
        CHECK(sum % 5 == 0);
    }
    std::sort(families.begin(), families.end());
    CHECK(families == std::vector<std::string>{"C", "C'", "C''"});
    CHECK(total_multisets == 7);  // every admissible multiset is covered

    CHECK(cls.cprime_involution);
    CHECK(cls.involution_weight == 2);
    CHECK(cls.canonical_rank3_relation);
}
