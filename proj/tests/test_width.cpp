#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hompres;

namespace {

std::vector<int> idx(const Graph& g, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names)
        out.push_back(g.require_index(n));
    return out;
}

Rational ratio(std::pair<long long, long long> p) { return Rational(p.first, p.second); }

std::vector<Graph> small_corpus(std::uint64_t seed, int count, int max_n) {
    std::mt19937_64 rng(seed);
    std::vector<Graph> out;
    for (int i = 0; i < count; ++i) {
        int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n));
        out.push_back(oracle::random_graph(rng, n, 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0));
    }
    return out;
}

}  // namespace

TEST(Scattered, Examples) {
    Graph p9 = oracle::path(9);
    EXPECT_TRUE(is_r_scattered(p9, idx(p9, {"1", "4", "7"}), 1));
    EXPECT_FALSE(is_r_scattered(p9, idx(p9, {"1", "4", "7", "9"}), 1));
    EXPECT_TRUE(is_r_scattered(p9, std::vector<int>{3}, 5));
    Graph k5 = oracle::clique(5);
    EXPECT_FALSE(is_r_scattered(k5, std::vector<int>{0, 1}, 1));
    EXPECT_THROW((void)is_r_scattered(k5, std::vector<int>{0}, -1), DomainError);
}

TEST(Scattered, MaxMatchesBruteForce) {
    EXPECT_EQ(max_scattered_set(oracle::path(9), 1, ScatterMode::Exact).size(), 3u);
    EXPECT_EQ(max_scattered_set(oracle::edgeless(7), 3, ScatterMode::Exact).size(), 7u);
    EXPECT_EQ(max_scattered_set(oracle::clique(5), 1, ScatterMode::Exact).size(), 1u);
    for (const auto& g : small_corpus(41, 150, 10))
        for (int r = 0; r <= 2; ++r) {
            auto s = max_scattered_set(g, r, ScatterMode::Exact);
            EXPECT_EQ(s.size(), oracle::brute_max_scattered(g, r));
            EXPECT_TRUE(is_r_scattered(g, s, r));
            auto greedy = max_scattered_set(g, r, ScatterMode::Greedy);
            EXPECT_TRUE(is_r_scattered(g, greedy, r));
            EXPECT_LE(greedy.size(), s.size());
        }
}

TEST(Scattered, ExactModeIsCapped) {
    EXPECT_THROW((void)max_scattered_set(oracle::path(20), 1, ScatterMode::Exact, nullptr, 10), SearchLimitExceeded);
    EXPECT_EQ(max_scattered_set(oracle::path(200), 1, ScatterMode::Greedy).size(), 67u);
}

TEST(Scattered, WitnessVerifier) {
    Graph star = oracle::star(5);
    ScatteredWitness w{{"1"}, {"2", "3", "4"}, 3};
    EXPECT_TRUE(verify_scattered_witness(star, w, 1, 3));
    EXPECT_FALSE(verify_scattered_witness(star, w, 0, 3));
    EXPECT_FALSE(verify_scattered_witness(star, ScatteredWitness{{}, {"2", "3"}, 1}, 1, 2));
    EXPECT_FALSE(verify_scattered_witness(star, ScatteredWitness{{"1"}, {"1", "2"}, 1}, 1, 2));
}

TEST(Minor, VerifyExamples) {
    Graph k4 = oracle::clique(4);
    MinorEmbedding single{4, {{"1"}, {"2"}, {"3"}, {"4"}}, std::nullopt, {}};
    EXPECT_TRUE(verify_minor(k4, single));
    MinorEmbedding overlap{2, {{"1", "2"}, {"2"}}, std::nullopt, {}};
    EXPECT_FALSE(verify_minor(k4, overlap));
    Graph c5 = oracle::cycle(5);
    MinorEmbedding tri{3, {{"1", "2"}, {"3"}, {"4", "5"}}, std::nullopt, {}};
    EXPECT_TRUE(verify_minor(c5, tri));
    MinorEmbedding disconnected{3, {{"1", "3"}, {"2"}, {"4", "5"}}, std::nullopt, {}};
    EXPECT_FALSE(verify_minor(c5, disconnected));
    MinorEmbedding deep = tri;
    deep.depth = 1;
    deep.centers = {"1", "3", "4"};
    EXPECT_TRUE(verify_minor(c5, deep));
    deep.depth = 0;
    EXPECT_FALSE(verify_minor(c5, deep));
}

TEST(Minor, SearchExamples) {
    Graph c5 = oracle::cycle(5);
    auto e = has_clique_minor(c5, 3);
    ASSERT_TRUE(e);
    EXPECT_TRUE(verify_minor(c5, *e));
    EXPECT_FALSE(has_clique_minor(c5, 3, 0));
    EXPECT_FALSE(has_clique_minor(oracle::clique(4), 5));
    EXPECT_TRUE(has_clique_minor(oracle::path(2), 2));
    EXPECT_FALSE(has_clique_minor(oracle::path(8), 3));
    EXPECT_TRUE(has_clique_minor(oracle::grid(3, 3), 4));
    EXPECT_FALSE(has_clique_minor(oracle::grid(3, 3), 5));
    EXPECT_THROW((void)has_clique_minor(oracle::path(30), 3), SearchLimitExceeded);
}

TEST(Minor, DepthZeroIsSubgraph) {
    std::mt19937_64 rng(43);
    std::vector<Graph> corpus;
    for (int n = 1; n <= 7; ++n)
        for (int i = 0; i < 5; ++i)
            corpus.push_back(oracle::random_graph(rng, n, 0.25 + 0.1 * i));
    for (const auto& h : corpus)
        for (const auto& g : corpus) {
            if (g.size() > h.size())
                continue;
            auto emb = is_minor(g, h, 0);
            ASSERT_EQ(emb.has_value(), oracle::brute_subgraph(g, h));
            if (emb) {
                EXPECT_TRUE(verify_minor(g, h, *emb));
            }
        }
}

TEST(Minor, AgreesWithLabellingOracle) {
    std::mt19937_64 rng(47);
    std::vector<Graph> patterns = {oracle::clique(3), oracle::clique(4), oracle::path(3), oracle::cycle(4),
                                   oracle::star(3)};
    for (int trial = 0; trial < 60; ++trial) {
        Graph h = oracle::random_graph(rng, 3 + static_cast<int>(rng() % 4), 0.45);
        for (const auto& g : patterns)
            for (int r : {-1, 1}) {
                std::optional<int> depth;
                if (r >= 0)
                    depth = r;
                auto emb = is_minor(g, h, depth);
                ASSERT_EQ(emb.has_value(), oracle::brute_minor(g, h, r));
                if (emb) {
                    EXPECT_TRUE(verify_minor(g, h, *emb));
                }
            }
    }
}

TEST(Minor, LocalCliqueScan) {
    auto hit = local_clique_scan(oracle::clique(5), 5, 0);
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->embedding.order, 5);
    EXPECT_FALSE(local_clique_scan(oracle::path(12), 3, 0));
    Graph g = oracle::grid(3, 3);
    auto h = local_clique_scan(g, 4, 0);
    ASSERT_TRUE(h);
    Graph local = induced_subgraph(g, ball(g, g.require_index(h->center), 4));
    EXPECT_TRUE(verify_minor(local, h->embedding));
}

TEST(Grad, DensestSubgraphMatchesBruteForce) {
    for (const auto& g : small_corpus(53, 200, 9)) {
        auto d = densest_subgraph(g);
        EXPECT_EQ(d.density, ratio(oracle::brute_densest(g)));
        if (g.size() > 0) {
            Graph sub = induced_subgraph(g, d.vertices);
            EXPECT_EQ(Rational(static_cast<long long>(sub.edge_count()), static_cast<long long>(sub.size())),
                      d.density);
        }
    }
}

TEST(Grad, Examples) {
    for (int k = 2; k <= 8; ++k)
        EXPECT_EQ(grad(oracle::clique(k), 0).value, Rational(k - 1, 2));
    EXPECT_EQ(grad(oracle::path(6), 0).value, Rational(5, 6));
    EXPECT_EQ(grad(oracle::star(4), 0).value, Rational(4, 5));
    EXPECT_EQ(grad(oracle::cycle(4), 1).value, Rational(1));
    EXPECT_EQ(grad(oracle::cycle(4), 0).value, Rational(1));
    EXPECT_EQ(grad(oracle::cycle(5), 1).value, Rational(1));
    EXPECT_EQ(grad(oracle::grid(2, 3), 1).value, Rational(5, 4));
    EXPECT_EQ(grad(oracle::edgeless(3), 2).value, Rational(0));
    EXPECT_EQ(grad(Graph{}, 1).value, Rational(0));
    EXPECT_TRUE(grad(oracle::clique(4), 1).exact);
    auto big = grad(oracle::path(14), 1);
    EXPECT_FALSE(big.exact);
    EXPECT_EQ(big.value, Rational(13, 14));
}

TEST(Grad, MatchesLabellingOracle) {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 5), 0.4);
        for (int r = 1; r <= 2; ++r)
            EXPECT_EQ(grad(g, r).value, ratio(oracle::brute_grad(g, r)));
    }
}

TEST(Grad, WitnessIsDepthMinorOfThatDensity) {
    for (const auto& g : small_corpus(61, 40, 8))
        for (int r = 0; r <= 2; ++r) {
            auto res = grad(g, r);
            if (g.size() == 0)
                continue;
            // The witness branch sets form a depth-r minor whose quotient has
            // exactly the reported density.
            std::vector<std::pair<int, int>> qe;
            for (std::size_t i = 0; i < res.branch_sets.size(); ++i)
                for (std::size_t j = i + 1; j < res.branch_sets.size(); ++j) {
                    bool joined = false;
                    for (const auto& a : res.branch_sets[i])
                        for (const auto& b : res.branch_sets[j])
                            joined = joined || g.adjacent(g.require_index(a), g.require_index(b));
                    if (joined)
                        qe.emplace_back(static_cast<int>(i), static_cast<int>(j));
                }
            Graph q = Graph::from_edges(static_cast<int>(res.branch_sets.size()), qe);
            MinorEmbedding emb{static_cast<int>(q.size()), res.branch_sets, std::nullopt, {}};
            EXPECT_TRUE(verify_minor(q, g, emb));
            EXPECT_EQ(Rational(static_cast<long long>(qe.size()), static_cast<long long>(q.size())), res.value);
            auto depth_ok = is_minor(q, g, r);
            EXPECT_TRUE(depth_ok.has_value());
        }
}

TEST(Grad, MonotoneInRadiusAndUnderSubgraphs) {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 6), 0.4);
        Rational prev{-1};
        for (int r = 0; r <= 2; ++r) {
            Rational v = grad(g, r).value;
            EXPECT_GE(v, prev);
            prev = v;
            std::vector<int> keep;
            for (std::size_t v2 = 1; v2 < g.size(); ++v2)
                keep.push_back(static_cast<int>(v2));
            EXPECT_LE(grad(induced_subgraph(g, keep), r).value, v);
        }
    }
}

TEST(Grad, SparseGraphsExcludeDenseShallowCliques) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = oracle::random_graph(rng, 3 + static_cast<int>(rng() % 5), 0.35);
        for (int r = 0; r <= 1; ++r)
            for (int k = 2; k <= 5; ++k)
                if (grad(g, r + 1).value < Rational(k - 1, 2)) {
                    EXPECT_FALSE(has_clique_minor(g, k, r + 1));
                }
    }
}

TEST(Dichotomy, Examples) {
    auto star = scattered_or_shallow_clique(oracle::star(12), 3, 2, 3);
    ASSERT_TRUE(std::holds_alternative<ScatteredWitness>(star));
    const auto& w = std::get<ScatteredWitness>(star);
    EXPECT_EQ(w.deleted, std::vector<ElementId>{"1"});
    EXPECT_EQ(w.scattered.size(), 12u);
    auto k6 = scattered_or_shallow_clique(oracle::clique(6), 4, 0, 2);
    ASSERT_TRUE(std::holds_alternative<MinorEmbedding>(k6));
    EXPECT_TRUE(verify_minor(oracle::clique(6), std::get<MinorEmbedding>(k6)));
    Graph grid = oracle::grid(3, 3);
    auto gr = scattered_or_shallow_clique(grid, 5, 1, 2);
    if (auto* e = std::get_if<MinorEmbedding>(&gr)) {
        EXPECT_TRUE(verify_minor(grid, *e));
        EXPECT_EQ(e->depth, 2);
    } else if (auto* s = std::get_if<ScatteredWitness>(&gr)) {
        EXPECT_TRUE(verify_scattered_witness(grid, *s, 3, 2));
    }
    EXPECT_THROW((void)scattered_or_shallow_clique(grid, 1, 1, 2), DomainError);
}

TEST(Dichotomy, CertificatesAlwaysVerify) {
    std::mt19937_64 rng(73);
    std::size_t minors = 0, scattered = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Graph g = trial % 3 == 0 ? oracle::random_graph(rng, 5 + static_cast<int>(rng() % 20), 0.12)
                  : trial % 3 == 1 ? oracle::grid(2 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 4))
                                   : oracle::star(2 + static_cast<int>(rng() % 10));
        int k = 2 + static_cast<int>(rng() % 4), r = static_cast<int>(rng() % 3), m = 1 + static_cast<int>(rng() % 4);
        auto res = scattered_or_shallow_clique(g, k, r, m);
        if (auto* e = std::get_if<MinorEmbedding>(&res)) {
            ++minors;
            EXPECT_EQ(e->order, k);
            EXPECT_EQ(e->depth, r + 1);
            EXPECT_TRUE(verify_minor(g, *e));
        } else if (auto* s = std::get_if<ScatteredWitness>(&res)) {
            ++scattered;
            EXPECT_TRUE(verify_scattered_witness(g, *s, static_cast<std::size_t>(k - 2), static_cast<std::size_t>(m)));
        }
    }
    EXPECT_GT(minors, 0u);
    EXPECT_GT(scattered, 0u);
}

TEST(Dichotomy, SmallCycleGivesTriangleMinor) {
    Graph g = oracle::cycle(4);
    auto res = scattered_or_shallow_clique(g, 3, 0, 3);
    ASSERT_TRUE(std::holds_alternative<MinorEmbedding>(res));
    EXPECT_TRUE(verify_minor(g, std::get<MinorEmbedding>(res)));
}

TEST(Dichotomy, HubSearchFindsSharedHubs) {
    // Balls {s1,a1} and {s2,a2}; hubs x1, x2 each touch both balls.
    Graph g(std::vector<ElementId>{"s1", "a1", "s2", "a2", "x1", "x2"},
            std::vector<std::pair<ElementId, ElementId>>{{"s1", "a1"}, {"s2", "a2"}, {"x1", "a1"}, {"x1", "a2"}, {"x2", "a1"}, {"x2", "a2"}});
    std::vector<bool> blocked(g.size(), false);
    detail::Stage st(g, 1, {0, 2}, blocked);
    detail::HubCaseSearch hs{st, 2, 1000};
    for (std::size_t x = 0; x < g.size(); ++x)
        if (st.touches[x].size() >= 2)
            hs.candidates.push_back(static_cast<int>(x));
    ASSERT_TRUE(hs.run(0, {0, 1}));
    EXPECT_EQ(hs.chosen, (std::vector<int>{4, 5}));
    EXPECT_EQ(hs.common, (std::vector<int>{0, 1}));
    detail::CliqueCaseSearch cs(st, 3, 1000);
    EXPECT_FALSE(cs.run({0, 1}));
}

TEST(Dichotomy, ExhaustedOnTinyInputs) {
    auto res = scattered_or_shallow_clique(oracle::path(2), 3, 1, 5);
    EXPECT_TRUE(std::holds_alternative<Exhausted>(res));
}

TEST(Margins, Arithmetic) {
    auto three = MarginFunction::tabulate([](int) { return 3; }, 20, MarginSource::BoundedExpansion);
    for (int r = 0; r < 10; ++r) {
        EXPECT_EQ(margin_bounded_expansion(three, r).k, 8);
        EXPECT_EQ(margin_bounded_expansion(three, r).margin, 6);
    }
    auto id = MarginFunction::tabulate([](int r) { return r; }, 20, MarginSource::LocalMinor);
    EXPECT_EQ(margin_local_minor(id, 2).k, 10);
    EXPECT_EQ(margin_local_minor(id, 2).margin, 8);
    auto zero = MarginFunction::tabulate([](int) { return 0; }, 20, MarginSource::BoundedExpansion);
    EXPECT_EQ(margin_bounded_expansion(zero, 4).k, 2);
    EXPECT_EQ(margin_bounded_expansion(zero, 4).margin, 0);
    EXPECT_THROW((void)margin_local_minor(id, 6), DomainError);
    EXPECT_THROW((void)MarginFunction::tabulate([](int) { return -1; }, 2, MarginSource::LocalMinor), DomainError);
}

TEST(Classify, Examples) {
    auto edgeless = classify_corpus({oracle::edgeless(3), oracle::edgeless(6)}, 2, 3, 2);
    EXPECT_EQ(edgeless.corpus_k, 0);
    std::vector<Graph> stars;
    for (int leaves = 3; leaves <= 8; ++leaves)
        stars.push_back(oracle::star(leaves));
    auto sr = classify_corpus(stars, 2, 3, 3);
    EXPECT_EQ(sr.corpus_k, 1);
    for (const auto& e : sr.entries)
        EXPECT_EQ(e.least_k, 1);
    auto cliques = classify_corpus({oracle::clique(5), oracle::clique(7)}, 1, 2, 3);
    EXPECT_FALSE(cliques.corpus_k);
    for (const auto& e : cliques.entries)
        EXPECT_FALSE(e.least_k);
}

TEST(Classify, LeastKMatchesBruteForce) {
    for (const auto& g : small_corpus(79, 60, 7)) {
        for (int r = 1; r <= 2; ++r) {
            int m = 2;
            auto e = least_deletion(g, r, m, 2);
            std::optional<int> want;
            for (int k = 0; k <= 2 && !want; ++k)
                for (std::uint64_t del = 0; del < (std::uint64_t{1} << g.size()) && !want; ++del) {
                    if (std::popcount(del) != k)
                        continue;
                    std::vector<int> keep;
                    for (std::size_t v = 0; v < g.size(); ++v)
                        if (!((del >> v) & 1U))
                            keep.push_back(static_cast<int>(v));
                    if (oracle::brute_max_scattered(induced_subgraph(g, keep), r) >= static_cast<std::size_t>(m))
                        want = k;
                }
            EXPECT_EQ(e.least_k, want);
        }
    }
}
