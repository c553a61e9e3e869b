#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"

namespace hompres {

/// A deletion set B together with a set that is r-scattered in G[V ∖ B].
struct ScatteredWitness {
    std::vector<ElementId> deleted;
    std::vector<ElementId> scattered;
    int radius = 0;
};

/// Pairwise distance > 2r (equivalently, disjoint r-balls), with the vertices
/// flagged in `blocked` removed from the graph.
inline bool is_r_scattered(const Graph& g, const std::vector<int>& set, int r,
                           const std::vector<bool>* blocked = nullptr) {
    if (r < 0)
        throw DomainError("scatter radius must be nonnegative");
    std::vector<bool> member(g.size(), false);
    for (int v : set) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.size())
            throw DomainError("vertex index out of range");
        if ((blocked && (*blocked)[static_cast<std::size_t>(v)]) || member[static_cast<std::size_t>(v)])
            return false;
        member[static_cast<std::size_t>(v)] = true;
    }
    for (int v : set) {
        auto d = bfs_distances(g, v, 2 * r, blocked);
        for (int u : set)
            if (u != v && d[static_cast<std::size_t>(u)] != kUnreachable)
                return false;
    }
    return true;
}

inline bool is_r_scattered(const Graph& g, const std::vector<ElementId>& set, int r) {
    std::vector<int> idx;
    for (const auto& v : set)
        idx.push_back(g.require_index(v));
    return is_r_scattered(g, idx, r);
}

/// Deleted and scattered sets are disjoint vertex sets of g, |deleted| ≤
/// max_deleted, |scattered| ≥ min_size, and the scattered set is r-scattered
/// in G[V ∖ deleted].
inline bool verify_scattered_witness(const Graph& g, const ScatteredWitness& w, std::size_t max_deleted,
                                     std::size_t min_size) {
    if (w.radius < 0 || w.deleted.size() > max_deleted || w.scattered.size() < min_size)
        return false;
    std::vector<bool> blocked(g.size(), false);
    for (const auto& v : w.deleted) {
        auto i = g.index_of(v);
        if (!i || blocked[static_cast<std::size_t>(*i)])
            return false;
        blocked[static_cast<std::size_t>(*i)] = true;
    }
    std::vector<int> idx;
    for (const auto& v : w.scattered) {
        auto i = g.index_of(v);
        if (!i)
            return false;
        idx.push_back(*i);
    }
    return is_r_scattered(g, idx, w.radius, &blocked);
}

namespace detail {

/// Maximum independent set over at most 64 vertices. Branches on the vertices
/// of N[v] for a minimum-degree v; stops early once `target` (if nonzero) is
/// reached or the node limit is hit (then `complete` is false).
struct IndependentSetSearch {
    const std::vector<std::uint64_t>& adj;
    std::size_t target = 0;
    std::size_t node_limit = 0;
    std::size_t nodes = 0;
    std::uint64_t best = 0;
    bool complete = true;

    bool done() const { return target && static_cast<std::size_t>(std::popcount(best)) >= target; }

    void run(std::uint64_t cand, std::uint64_t cur) {
        if (done() || !complete)
            return;
        if (node_limit && ++nodes > node_limit) {
            complete = false;
            return;
        }
        if (std::popcount(cur) + std::popcount(cand) <= std::popcount(best))
            return;
        if (cand == 0) {
            best = cur;
            return;
        }
        int pick = -1, low = 65;
        for (std::uint64_t c = cand; c; c &= c - 1) {
            int v = std::countr_zero(c);
            int deg = std::popcount(adj[static_cast<std::size_t>(v)] & cand);
            if (deg < low) {
                low = deg;
                pick = v;
            }
        }
        std::uint64_t branch = (adj[static_cast<std::size_t>(pick)] & cand) | (std::uint64_t{1} << pick);
        for (std::uint64_t b = branch; b; b &= b - 1) {
            int u = std::countr_zero(b);
            std::uint64_t ubit = std::uint64_t{1} << u;
            run(cand & ~adj[static_cast<std::size_t>(u)] & ~ubit, cur | ubit);
            if (done() || !complete)
                return;
        }
    }
};

/// Conflict graph "distance ≤ 2r" on the listed vertices (at most 64).
inline std::vector<std::uint64_t> conflict_graph(const Graph& g, const std::vector<int>& verts, int r,
                                                 const std::vector<bool>* blocked) {
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i)
        pos[static_cast<std::size_t>(verts[i])] = static_cast<int>(i);
    std::vector<std::uint64_t> adj(verts.size(), 0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        auto d = bfs_distances(g, verts[i], 2 * r, blocked);
        for (std::size_t u = 0; u < d.size(); ++u)
            if (d[u] != kUnreachable && pos[u] >= 0 && static_cast<std::size_t>(pos[u]) != i)
                adj[i] |= std::uint64_t{1} << pos[u];
    }
    return adj;
}

}  // namespace detail

enum class ScatterMode { Exact, Greedy };

inline constexpr std::size_t kExactScatterCap = 64;

/// Largest r-scattered set (exact) or the greedy one: repeatedly take the
/// least remaining vertex and discard its 2r-ball. Vertices in `blocked` are
/// deleted first. Exact mode refuses graphs with more than `cap` live vertices.
inline std::vector<int> max_scattered_set(const Graph& g, int r, ScatterMode mode,
                                          const std::vector<bool>* blocked = nullptr,
                                          std::size_t cap = kExactScatterCap) {
    if (r < 0)
        throw DomainError("scatter radius must be nonnegative");
    std::vector<int> live;
    for (std::size_t v = 0; v < g.size(); ++v)
        if (!blocked || !(*blocked)[v])
            live.push_back(static_cast<int>(v));
    if (mode == ScatterMode::Greedy) {
        std::vector<bool> gone(g.size(), false);
        std::vector<int> out;
        for (int v : live) {
            if (gone[static_cast<std::size_t>(v)])
                continue;
            out.push_back(v);
            for (int u : ball(g, v, 2 * r, blocked))
                gone[static_cast<std::size_t>(u)] = true;
        }
        return out;
    }
    if (live.size() > std::min<std::size_t>(cap, 64))
        throw SearchLimitExceeded("exact scattered-set search refuses graphs with more than " +
                                  std::to_string(std::min<std::size_t>(cap, 64)) + " vertices");
    auto adj = detail::conflict_graph(g, live, r, blocked);
    detail::IndependentSetSearch search{adj};
    std::uint64_t all = live.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live.size()) - 1;
    search.run(all, 0);
    std::vector<int> out;
    for (std::uint64_t b = search.best; b; b &= b - 1)
        out.push_back(live[static_cast<std::size_t>(std::countr_zero(b))]);
    return out;
}

inline std::vector<ElementId> max_scattered_set_ids(const Graph& g, int r, ScatterMode mode) {
    std::vector<ElementId> out;
    for (int v : max_scattered_set(g, r, mode))
        out.push_back(g.vertex(v));
    return out;
}

}  // namespace hompres
