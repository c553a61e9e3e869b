#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hompres;

namespace {

const Vocabulary kE{{"E", 2}};
const Vocabulary kEP{{"E", 2}, {"P", 1}};

Structure gs(const Graph& g) { return graph_structure(g); }

}  // namespace

TEST(IsHom, Examples) {
    Structure p3 = gs(oracle::path(3));
    Structure k2 = gs(oracle::clique(2));
    EXPECT_TRUE(is_hom(p3, p3, inclusion_map(p3)));
    EXPECT_TRUE(is_hom(p3, k2, {{"1", "1"}, {"2", "2"}, {"3", "1"}}));
    EXPECT_FALSE(is_hom(p3, k2, {{"1", "1"}, {"2", "1"}, {"3", "1"}}));
    EXPECT_FALSE(is_hom(p3, k2, {{"1", "1"}, {"2", "2"}}));
    EXPECT_FALSE(is_hom(p3, k2, {{"1", "1"}, {"2", "2"}, {"3", "9"}}));
}

TEST(IsHom, ZeroAryTruthMustTransfer) {
    Vocabulary v{{"Q", 0}};
    Structure t = StructureBuilder(v).element("a").fact("Q").build();
    Structure f = StructureBuilder(v).element("b").build();
    EXPECT_FALSE(is_hom(t, f, {{"a", "b"}}));
    EXPECT_TRUE(is_hom(f, t, {{"b", "a"}}));
    EXPECT_FALSE(hom_exists(t, f));
    EXPECT_TRUE(hom_exists(f, t));
}

TEST(FindHom, InclusionAndOddCycle) {
    Structure l3 = oracle::line(3);
    Structure l2 = oracle::line(2);
    auto h = find_homomorphism(l2, disjoint_union(l2, l3));
    ASSERT_TRUE(h);
    EXPECT_TRUE(is_hom(l2, disjoint_union(l2, l3), *h));
    EXPECT_FALSE(find_homomorphism(gs(oracle::cycle(5)), gs(oracle::clique(2))));
    EXPECT_TRUE(find_homomorphism(gs(oracle::cycle(6)), gs(oracle::clique(2))));
    EXPECT_THROW((void)find_homomorphism(l2, gs(oracle::path(2))), VocabularyMismatch);
}

TEST(FindHom, LinesMapOnlyToIsomorphicLines) {
    for (int n = 2; n <= 5; ++n)
        for (int m = 2; m <= 5; ++m)
            EXPECT_EQ(hom_exists(oracle::line(n), oracle::line(m)), n == m) << n << " " << m;
}

TEST(FindHom, EmptyStructures) {
    Structure e(kE);
    EXPECT_TRUE(hom_exists(e, gs(oracle::path(2))));
    EXPECT_FALSE(hom_exists(gs(oracle::edgeless(1)), e));
}

TEST(FindHom, BudgetGivesUnknown) {
    // K_5 → K_4 is refuted only after search; a one-node budget cannot finish.
    auto r = search_homomorphism(gs(oracle::clique(6)), gs(oracle::clique(5)), 1);
    EXPECT_EQ(r.status, SearchStatus::Unknown);
    auto full = search_homomorphism(gs(oracle::clique(6)), gs(oracle::clique(5)));
    EXPECT_EQ(full.status, SearchStatus::None);
    EXPECT_GT(full.nodes, 1u);
}

TEST(FindHom, AgreesWithBruteForceOnRandomPairs) {
    std::mt19937_64 rng(17);
    Vocabulary v{{"E", 2}, {"P", 1}, {"R", 3}};
    for (int trial = 0; trial < 1500; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4), m = 1 + static_cast<int>(rng() % 4);
        Structure a = oracle::random_structure(rng, v, n, 0.2);
        Structure b = oracle::random_structure(rng, v, m, 0.45);
        auto r = search_homomorphism(a, b);
        ASSERT_EQ(r.status == SearchStatus::Found, oracle::brute_hom(a, b));
        if (r.map) {
            EXPECT_TRUE(is_hom(a, b, *r.map));
        }
    }
}

TEST(FindHom, CompositionIsHomomorphism) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        Structure a = oracle::random_structure(rng, kEP, 3, 0.2);
        Structure b = oracle::random_structure(rng, kEP, 3, 0.4);
        Structure c = oracle::random_structure(rng, kEP, 3, 0.6);
        auto f = find_homomorphism(a, b);
        auto g = find_homomorphism(b, c);
        if (f && g) {
            EXPECT_TRUE(is_hom(a, c, compose(*f, *g)));
        }
    }
}

TEST(FindHom, IntoDisjointUnion) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        Structure a = oracle::random_structure(rng, kEP, 4, 0.3);
        Structure b = oracle::random_structure(rng, kEP, 3, 0.3);
        EXPECT_TRUE(hom_exists(a, disjoint_union(a, b)));
    }
}

TEST(Equivalence, Examples) {
    Structure l3 = oracle::line(3);
    EXPECT_TRUE(homomorphically_equivalent(l3, disjoint_union(l3, l3)));
    EXPECT_FALSE(homomorphically_equivalent(gs(oracle::clique(2)), gs(oracle::edgeless(1))));
    EXPECT_FALSE(homomorphically_equivalent(oracle::line(3), oracle::line(4)));
    EXPECT_TRUE(homomorphically_equivalent(gs(oracle::cycle(4)), gs(oracle::clique(2))));
}

TEST(Preservation, UniversalSentenceViolated) {
    Vocabulary v{{"P", 1}};
    Structure one = StructureBuilder(v).element("1").fact("P", {"1"}).build();
    Structure two = StructureBuilder(v).elements({"1", "2"}).fact("P", {"1"}).build();
    auto bad = check_preservation(parse_formula("A x P(x)", v), {one, two});
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_EQ(bad[0], (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_TRUE(check_preservation(parse_formula("E x P(x)", v), {one, two}).empty());
}

TEST(Isomorphism, CanonicalFormInvariantUnderRenaming) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        Structure a = oracle::random_structure(rng, kEP, 5, 0.3);
        std::vector<ElementId> perm = a.universe();
        std::shuffle(perm.begin(), perm.end(), rng);
        std::map<ElementId, ElementId> ren;
        for (std::size_t i = 0; i < perm.size(); ++i)
            ren[a.element(static_cast<int>(i))] = "v" + perm[i];
        Structure b = rename_elements(a, [&](const ElementId& e) { return ren.at(e); });
        // Reorder the universe as well.
        Structure c = induced_substructure(b, std::vector<int>{4, 2, 0, 1, 3});
        EXPECT_TRUE(is_isomorphic(a, c));
        EXPECT_EQ(canonical_form(a), canonical_form(c));
    }
}

TEST(Isomorphism, MatchesMutualEmbeddingOracle) {
    // Two structures of the same size and fact count are isomorphic iff there
    // is an injective homomorphism; check against brute-force bijections.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        Structure a = oracle::random_structure(rng, kE, 4, 0.35);
        Structure b = oracle::random_structure(rng, kE, 4, 0.35);
        std::vector<int> p{0, 1, 2, 3};
        bool iso = false;
        do {
            HomCertificate h;
            for (int i = 0; i < 4; ++i)
                h[a.element(i)] = b.element(p[static_cast<std::size_t>(i)]);
            if (a.fact_count() == b.fact_count() && is_hom(a, b, h))
                iso = true;
        } while (!iso && std::next_permutation(p.begin(), p.end()));
        EXPECT_EQ(is_isomorphic(a, b), iso);
    }
}

TEST(Isomorphism, CapIsEnforced) {
    EXPECT_THROW(canonical_form(oracle::line(9)), SearchLimitExceeded);
    EXPECT_NO_THROW(canonical_form(oracle::line(9), 9));
}
