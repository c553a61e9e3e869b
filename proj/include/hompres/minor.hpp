#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"

namespace hompres {

/// Branch sets witnessing a minor. branch_sets[i] is the set for pattern
/// vertex i (for K_k every pair must be joined). With a depth r each set lies
/// inside the host ball N_r(centers[i]).
struct MinorEmbedding {
    int order = 0;
    std::vector<std::vector<ElementId>> branch_sets;
    std::optional<int> depth;
    std::vector<ElementId> centers;
};

namespace detail {

inline std::optional<std::vector<std::vector<int>>> branch_indices(const Graph& h, const MinorEmbedding& emb) {
    if (emb.order < 0 || emb.branch_sets.size() != static_cast<std::size_t>(emb.order))
        return std::nullopt;
    std::vector<int> owner(h.size(), -1);
    std::vector<std::vector<int>> sets;
    for (std::size_t i = 0; i < emb.branch_sets.size(); ++i) {
        if (emb.branch_sets[i].empty())
            return std::nullopt;
        std::vector<int> s;
        for (const auto& v : emb.branch_sets[i]) {
            auto idx = h.index_of(v);
            if (!idx || owner[static_cast<std::size_t>(*idx)] != -1)
                return std::nullopt;
            owner[static_cast<std::size_t>(*idx)] = static_cast<int>(i);
            s.push_back(*idx);
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

inline bool connected_within(const Graph& h, const std::vector<int>& set) {
    std::vector<bool> in(h.size(), false), seen(h.size(), false);
    for (int v : set)
        in[static_cast<std::size_t>(v)] = true;
    std::vector<int> stack{set.front()};
    seen[static_cast<std::size_t>(set.front())] = true;
    std::size_t reached = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++reached;
        for (int w : h.neighbors(u))
            if (in[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
    }
    return reached == set.size();
}

inline bool sets_touch(const Graph& h, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<bool> in(h.size(), false);
    for (int v : b)
        in[static_cast<std::size_t>(v)] = true;
    for (int u : a)
        for (int w : h.neighbors(u))
            if (in[static_cast<std::size_t>(w)])
                return true;
    return false;
}

}  // namespace detail

/// Checks disjointness, connectivity, the depth bound (distances measured in
/// the host) and an edge between the sets of every pattern edge.
inline bool verify_minor(const Graph& pattern, const Graph& h, const MinorEmbedding& emb) {
    if (static_cast<std::size_t>(emb.order) != pattern.size())
        return false;
    auto sets = detail::branch_indices(h, emb);
    if (!sets)
        return false;
    for (const auto& s : *sets)
        if (!detail::connected_within(h, s))
            return false;
    if (emb.depth) {
        if (*emb.depth < 0 || emb.centers.size() != sets->size())
            return false;
        for (std::size_t i = 0; i < sets->size(); ++i) {
            auto c = h.index_of(emb.centers[i]);
            if (!c)
                return false;
            auto d = bfs_distances(h, *c, *emb.depth);
            for (int v : (*sets)[i])
                if (d[static_cast<std::size_t>(v)] == kUnreachable)
                    return false;
        }
    }
    for (auto [u, v] : pattern.edges())
        if (!detail::sets_touch(h, (*sets)[static_cast<std::size_t>(u)], (*sets)[static_cast<std::size_t>(v)]))
            return false;
    return true;
}

inline Graph complete_graph(int k) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            e.emplace_back(i, j);
    return Graph::from_edges(k, e);
}

/// K_k minor check, k = emb.order.
inline bool verify_minor(const Graph& h, const MinorEmbedding& emb) {
    return verify_minor(complete_graph(emb.order), h, emb);
}

struct MinorSearchOptions {
    std::size_t max_vertices = 24;
    std::size_t node_limit = 20'000'000;
};

namespace detail {

inline std::uint64_t neighbor_mask(const std::vector<std::uint64_t>& adj, std::uint64_t set) {
    std::uint64_t out = 0;
    for (std::uint64_t b = set; b; b &= b - 1)
        out |= adj[static_cast<std::size_t>(std::countr_zero(b))];
    return out & ~set;
}

/// All connected vertex subsets, each grown from its least vertex by adding
/// larger neighbours only.
inline std::vector<std::uint64_t> connected_subsets(const std::vector<std::uint64_t>& adj, std::size_t limit) {
    std::vector<std::uint64_t> out;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        std::uint64_t above = ~((std::uint64_t{2} << v) - 1);
        std::vector<std::uint64_t> frontier{std::uint64_t{1} << v};
        seen.insert(frontier.front());
        while (!frontier.empty()) {
            std::uint64_t s = frontier.back();
            frontier.pop_back();
            out.push_back(s);
            if (out.size() > limit)
                throw SearchLimitExceeded("too many connected subsets in minor search");
            for (std::uint64_t ext = neighbor_mask(adj, s) & above; ext; ext &= ext - 1) {
                std::uint64_t t = s | (ext & -ext);
                if (seen.insert(t).second)
                    frontier.push_back(t);
            }
        }
    }
    return out;
}

inline std::vector<std::uint64_t> graph_masks(const Graph& g) {
    std::vector<std::uint64_t> adj(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
        for (int u : g.neighbors(static_cast<int>(v)))
            adj[v] |= std::uint64_t{1} << u;
    return adj;
}

/// ball_masks[w] = N_r(w) in g.
inline std::vector<std::uint64_t> ball_masks(const Graph& g, int r) {
    std::vector<std::uint64_t> out(g.size(), 0);
    for (std::size_t w = 0; w < g.size(); ++w)
        for (int u : ball(g, static_cast<int>(w), r))
            out[w] |= std::uint64_t{1} << u;
    return out;
}

inline std::optional<int> depth_center(const std::vector<std::uint64_t>& balls, std::uint64_t set) {
    for (std::size_t w = 0; w < balls.size(); ++w)
        if ((set & ~balls[w]) == 0)
            return static_cast<int>(w);
    return std::nullopt;
}

struct MinorSearch {
    const Graph& pattern;
    std::vector<std::uint64_t> host_adj{};
    std::vector<std::uint64_t> candidates{};
    std::vector<int> centers{};
    std::vector<int> order{};
    std::vector<std::uint64_t> chosen{};
    std::vector<std::size_t> chosen_idx{};
    bool symmetric = false;
    std::size_t node_limit = 0;
    std::size_t nodes = 0;

    bool run(std::size_t depth, std::uint64_t used) {
        if (depth == order.size())
            return true;
        if (++nodes > node_limit)
            throw SearchLimitExceeded("minor search exceeded its node limit");
        if (static_cast<std::size_t>(std::popcount(~used & all())) < order.size() - depth)
            return false;
        int p = order[depth];
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            std::uint64_t s = candidates[c];
            if (s & used)
                continue;
            if (symmetric && depth > 0 && std::countr_zero(s) < std::countr_zero(chosen[static_cast<std::size_t>(order[depth - 1])]))
                continue;
            std::uint64_t nb = neighbor_mask(host_adj, s);
            bool ok = true;
            for (int q : pattern.neighbors(p)) {
                std::uint64_t other = chosen[static_cast<std::size_t>(q)];
                if (other && !(nb & other)) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            chosen[static_cast<std::size_t>(p)] = s;
            chosen_idx[static_cast<std::size_t>(p)] = c;
            if (run(depth + 1, used | s))
                return true;
            chosen[static_cast<std::size_t>(p)] = 0;
        }
        return false;
    }

    std::uint64_t all() const {
        return host_adj.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << host_adj.size()) - 1;
    }
};

}  // namespace detail

/// Complete search for g ⪯ h, or g ⪯_r h when a depth is given. Candidate
/// branch sets are the connected subsets of h, smallest first.
inline std::optional<MinorEmbedding> is_minor(const Graph& g, const Graph& h, std::optional<int> depth = std::nullopt,
                                              const MinorSearchOptions& opts = {}) {
    if (depth && *depth < 0)
        throw DomainError("minor depth must be nonnegative");
    if (g.size() == 0)
        return MinorEmbedding{0, {}, depth, {}};
    if (g.size() > h.size() || g.edge_count() > h.edge_count())
        return std::nullopt;
    if (h.size() > std::min<std::size_t>(opts.max_vertices, 64))
        throw SearchLimitExceeded("minor search refuses hosts with more than " +
                                  std::to_string(std::min<std::size_t>(opts.max_vertices, 64)) + " vertices");
    detail::MinorSearch search{g};
    search.host_adj = detail::graph_masks(h);
    auto subsets = detail::connected_subsets(search.host_adj, opts.node_limit);
    std::vector<std::uint64_t> balls;
    if (depth)
        balls = detail::ball_masks(h, *depth);
    for (std::uint64_t s : subsets) {
        if (depth) {
            auto c = detail::depth_center(balls, s);
            if (!c)
                continue;
            search.centers.push_back(*c);
        }
        search.candidates.push_back(s);
    }
    std::vector<std::size_t> perm(search.candidates.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return std::popcount(search.candidates[a]) < std::popcount(search.candidates[b]);
    });
    {
        std::vector<std::uint64_t> cand;
        std::vector<int> cent;
        for (auto i : perm) {
            cand.push_back(search.candidates[i]);
            if (depth)
                cent.push_back(search.centers[i]);
        }
        search.candidates = std::move(cand);
        search.centers = std::move(cent);
    }
    for (std::size_t v = 0; v < g.size(); ++v)
        search.order.push_back(static_cast<int>(v));
    std::stable_sort(search.order.begin(), search.order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    search.symmetric = g.edge_count() * 2 == g.size() * (g.size() - 1);
    search.chosen.assign(g.size(), 0);
    search.chosen_idx.assign(g.size(), 0);
    search.node_limit = opts.node_limit;
    if (!search.run(0, 0))
        return std::nullopt;
    MinorEmbedding emb;
    emb.order = static_cast<int>(g.size());
    emb.depth = depth;
    for (std::size_t p = 0; p < g.size(); ++p) {
        std::vector<ElementId> set;
        for (std::uint64_t b = search.chosen[p]; b; b &= b - 1)
            set.push_back(h.vertex(std::countr_zero(b)));
        emb.branch_sets.push_back(std::move(set));
        if (depth)
            emb.centers.push_back(h.vertex(search.centers[search.chosen_idx[p]]));
    }
    return emb;
}

inline std::optional<MinorEmbedding> has_clique_minor(const Graph& h, int k, std::optional<int> depth = std::nullopt,
                                                      const MinorSearchOptions& opts = {}) {
    if (k < 0)
        throw DomainError("clique order must be nonnegative");
    return is_minor(complete_graph(k), h, depth, opts);
}

struct LocalCliqueMinor {
    ElementId center;
    MinorEmbedding embedding;
};

/// Looks for K_k as a minor of some ball N_{3r+4}(v). The returned branch sets
/// use host vertex names.
inline std::optional<LocalCliqueMinor> local_clique_scan(const Graph& g, int k, int r,
                                                         const MinorSearchOptions& opts = {}) {
    if (k < 1 || r < 0)
        throw DomainError("local clique scan needs k ≥ 1 and r ≥ 0");
    for (std::size_t v = 0; v < g.size(); ++v) {
        Graph local = induced_subgraph(g, ball(g, static_cast<int>(v), 3 * r + 4));
        auto emb = has_clique_minor(local, k, std::nullopt, opts);
        if (emb && verify_minor(local, *emb))
            return LocalCliqueMinor{g.vertex(static_cast<int>(v)), std::move(*emb)};
    }
    return std::nullopt;
}

}  // namespace hompres
