#pragma once

#include <algorithm>
#include <cstddef>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"
#include "hompres/scattered.hpp"

namespace hompres {

enum class MarginSource { BoundedExpansion, LocalMinor };

/// Tabulated r ↦ f(r). For bounded expansion f bounds ∇_r; for locally
/// excluded minors K_{f(r)} is not a minor of any r-ball.
struct MarginFunction {
    std::map<int, long long> table;
    MarginSource source = MarginSource::BoundedExpansion;

    long long at(int r) const {
        auto it = table.find(r);
        if (it == table.end())
            throw DomainError("margin function is not tabulated at r = " + std::to_string(r));
        return it->second;
    }

    static MarginFunction tabulate(const std::function<long long(int)>& f, int max_r, MarginSource src) {
        MarginFunction out;
        out.source = src;
        for (int r = 0; r <= max_r; ++r) {
            long long v = f(r);
            if (v < 0)
                throw DomainError("margin function values must be nonnegative");
            out.table[r] = v;
        }
        return out;
    }
};

struct Margin {
    long long k = 0;       // clique order excluded at depth r+1 (or in 3r+4 balls)
    long long margin = 0;  // k - 2 deleted vertices
};

inline Margin margin_bounded_expansion(const MarginFunction& f, int r) {
    if (r < 0)
        throw DomainError("radius must be nonnegative");
    long long k = 2 * f.at(r + 1) + 2;
    return {k, k - 2};
}

inline Margin margin_local_minor(const MarginFunction& f, int r) {
    if (r < 0)
        throw DomainError("radius must be nonnegative");
    long long k = f.at(3 * r + 4);
    return {k, std::max<long long>(k - 2, 0)};
}

struct CorpusEntry {
    std::optional<int> least_k;  // none when no deletion set of size ≤ kmax works
    std::optional<ScatteredWitness> witness;
};

struct CorpusReport {
    int radius = 0;
    int m = 0;
    int kmax = 0;
    std::vector<CorpusEntry> entries;
    /// Largest least_k over the corpus; none if some graph needs more than kmax.
    std::optional<int> corpus_k;
};

namespace detail {

inline bool combinations(std::size_t n, std::size_t k, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = static_cast<int>(i);
    if (k > n)
        return false;
    while (true) {
        if (visit(c))
            return true;
        std::size_t i = k;
        while (i > 0 && static_cast<std::size_t>(c[i - 1]) == n - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

}  // namespace detail

/// Least k ≤ kmax such that deleting some k vertices leaves an r-scattered set
/// of size m; exhaustive over deletion sets.
inline CorpusEntry least_deletion(const Graph& g, int r, int m, int kmax) {
    if (r < 0 || m < 0 || kmax < 0)
        throw DomainError("classification needs r, m, kmax ≥ 0");
    if (g.size() > kExactScatterCap)
        throw SearchLimitExceeded("exact classification refuses graphs with more than " +
                                  std::to_string(kExactScatterCap) + " vertices");
    CorpusEntry out;
    for (int k = 0; k <= kmax; ++k) {
        std::optional<ScatteredWitness> found;
        detail::combinations(g.size(), static_cast<std::size_t>(k), [&](const std::vector<int>& del) {
            std::vector<bool> blocked(g.size(), false);
            for (int v : del)
                blocked[static_cast<std::size_t>(v)] = true;
            std::vector<int> live;
            for (std::size_t v = 0; v < g.size(); ++v)
                if (!blocked[v])
                    live.push_back(static_cast<int>(v));
            if (live.size() < static_cast<std::size_t>(m))
                return false;
            auto adj = detail::conflict_graph(g, live, r, &blocked);
            detail::IndependentSetSearch mis{adj};
            mis.target = static_cast<std::size_t>(m);
            mis.run(live.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live.size()) - 1, 0);
            if (static_cast<std::size_t>(std::popcount(mis.best)) < static_cast<std::size_t>(m))
                return false;
            ScatteredWitness w;
            w.radius = r;
            for (int v : del)
                w.deleted.push_back(g.vertex(v));
            for (std::uint64_t b = mis.best; b; b &= b - 1)
                w.scattered.push_back(g.vertex(live[static_cast<std::size_t>(std::countr_zero(b))]));
            found = std::move(w);
            return true;
        });
        if (found) {
            if (!verify_scattered_witness(g, *found, static_cast<std::size_t>(k), static_cast<std::size_t>(m)))
                throw Error("internal error: classification witness failed verification");
            out.least_k = k;
            out.witness = std::move(found);
            return out;
        }
    }
    return out;
}

inline CorpusReport classify_corpus(const std::vector<Graph>& graphs, int r, int m, int kmax) {
    CorpusReport rep;
    rep.radius = r;
    rep.m = m;
    rep.kmax = kmax;
    bool all = true;
    int worst = 0;
    for (const auto& g : graphs) {
        rep.entries.push_back(least_deletion(g, r, m, kmax));
        if (rep.entries.back().least_k)
            worst = std::max(worst, *rep.entries.back().least_k);
        else
            all = false;
    }
    if (all)
        rep.corpus_k = worst;
    return rep;
}

}  // namespace hompres
