#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"
#include "hompres/minor.hpp"
#include "hompres/scattered.hpp"

namespace hompres {

struct Exhausted {
    std::string reason;
};

using DichotomyResult = std::variant<MinorEmbedding, ScatteredWitness, Exhausted>;

struct DichotomyOptions {
    std::size_t node_limit = 200'000;
};

namespace detail {

/// One stage of the construction: disjoint balls N_i(s) in G - B for s in S.
struct Stage {
    const Graph& g;
    int radius;
    std::vector<int> centers;
    std::vector<std::vector<int>> balls;
    std::vector<int> owner;                 // ball index per vertex or -1
    std::vector<std::vector<int>> touches;  // balls adjacent to a vertex, own ball excluded
    std::vector<std::vector<char>> direct;  // balls joined by an edge

    Stage(const Graph& graph, int i, const std::vector<int>& s, const std::vector<bool>& blocked)
        : g(graph), radius(i), centers(s), owner(graph.size(), -1) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            balls.push_back(ball(g, s[j], i, &blocked));
            for (int v : balls.back())
                owner[static_cast<std::size_t>(v)] = static_cast<int>(j);
        }
        touches.resize(g.size());
        direct.assign(s.size(), std::vector<char>(s.size(), 0));
        for (std::size_t x = 0; x < g.size(); ++x) {
            std::vector<int>& t = touches[x];
            for (int y : g.neighbors(static_cast<int>(x))) {
                int b = owner[static_cast<std::size_t>(y)];
                if (b >= 0 && b != owner[x])
                    t.push_back(b);
            }
            std::sort(t.begin(), t.end());
            t.erase(std::unique(t.begin(), t.end()), t.end());
            if (owner[x] >= 0)
                for (int b : t)
                    direct[static_cast<std::size_t>(owner[x])][static_cast<std::size_t>(b)] = 1;
        }
    }
};

struct CliqueCaseSearch {
    const Stage& st;
    std::size_t k;
    std::size_t node_limit;
    std::size_t nodes = 0;
    std::vector<std::vector<std::vector<int>>> mids;  // middle-vertex candidates per pair
    std::vector<int> chosen{};
    std::vector<std::pair<std::pair<int, int>, int>> links;

    CliqueCaseSearch(const Stage& s, std::size_t k_, std::size_t limit) : st(s), k(k_), node_limit(limit) {
        std::size_t n = st.centers.size();
        mids.assign(n, std::vector<std::vector<int>>(n));
        for (std::size_t x = 0; x < st.g.size(); ++x) {
            const auto& t = st.touches[x];
            for (std::size_t a = 0; a < t.size(); ++a)
                for (std::size_t b = a + 1; b < t.size(); ++b)
                    mids[static_cast<std::size_t>(t[a])][static_cast<std::size_t>(t[b])].push_back(static_cast<int>(x));
        }
    }

    bool linked(int a, int b) const {
        auto [lo, hi] = std::minmax(a, b);
        return st.direct[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ||
               !mids[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)].empty();
    }

    // Distinct middle vertices outside every chosen ball for the pairs that
    // are not directly adjacent (bipartite matching by augmenting paths).
    bool assign_middles() {
        std::vector<std::pair<int, int>> need;
        for (std::size_t a = 0; a < chosen.size(); ++a)
            for (std::size_t b = a + 1; b < chosen.size(); ++b)
                if (!st.direct[static_cast<std::size_t>(chosen[a])][static_cast<std::size_t>(chosen[b])])
                    need.emplace_back(static_cast<int>(a), static_cast<int>(b));
        std::vector<bool> in_chosen(st.g.size(), false);
        for (int c : chosen)
            for (int v : st.balls[static_cast<std::size_t>(c)])
                in_chosen[static_cast<std::size_t>(v)] = true;
        std::vector<std::vector<int>> opts;
        for (auto [a, b] : need) {
            auto [lo, hi] = std::minmax(chosen[static_cast<std::size_t>(a)], chosen[static_cast<std::size_t>(b)]);
            std::vector<int> o;
            for (int x : mids[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)])
                if (!in_chosen[static_cast<std::size_t>(x)])
                    o.push_back(x);
            if (o.empty())
                return false;
            opts.push_back(std::move(o));
        }
        std::vector<int> match_of(st.g.size(), -1);
        std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t p, std::vector<bool>& vis) {
            for (int x : opts[p]) {
                if (vis[static_cast<std::size_t>(x)])
                    continue;
                vis[static_cast<std::size_t>(x)] = true;
                int& m = match_of[static_cast<std::size_t>(x)];
                if (m < 0 || augment(static_cast<std::size_t>(m), vis)) {
                    m = static_cast<int>(p);
                    return true;
                }
            }
            return false;
        };
        for (std::size_t p = 0; p < need.size(); ++p) {
            std::vector<bool> vis(st.g.size(), false);
            if (!augment(p, vis))
                return false;
        }
        links.clear();
        for (std::size_t x = 0; x < match_of.size(); ++x)
            if (match_of[x] >= 0)
                links.push_back({need[static_cast<std::size_t>(match_of[x])], static_cast<int>(x)});
        return true;
    }

    bool run(const std::vector<int>& cand) {
        if (chosen.size() == k)
            return assign_middles();
        if (++nodes > node_limit || chosen.size() + cand.size() < k)
            return false;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            std::vector<int> next;
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (linked(cand[i], cand[j]))
                    next.push_back(cand[j]);
            chosen.push_back(cand[i]);
            if (run(next))
                return true;
            chosen.pop_back();
            if (nodes > node_limit)
                return false;
        }
        return false;
    }
};

struct HubCaseSearch {
    const Stage& st;
    std::size_t need;  // k - 1
    std::size_t node_limit;
    std::size_t nodes = 0;
    std::vector<int> candidates{};
    std::vector<int> chosen{};
    std::vector<int> common{};

    bool run(std::size_t from, const std::vector<int>& inter) {
        if (chosen.size() == need) {
            // Chosen hubs must lie outside the chosen balls.
            std::vector<int> usable;
            for (int b : inter) {
                bool clash = false;
                for (int x : chosen)
                    if (st.owner[static_cast<std::size_t>(x)] == b)
                        clash = true;
                if (!clash)
                    usable.push_back(b);
            }
            if (usable.size() < need)
                return false;
            usable.resize(need);
            common = usable;
            return true;
        }
        if (++nodes > node_limit)
            return false;
        for (std::size_t i = from; i < candidates.size(); ++i) {
            int x = candidates[i];
            const auto& t = st.touches[static_cast<std::size_t>(x)];
            std::vector<int> next;
            std::set_intersection(inter.begin(), inter.end(), t.begin(), t.end(), std::back_inserter(next));
            if (next.size() < need)
                continue;
            chosen.push_back(x);
            if (run(i + 1, next))
                return true;
            chosen.pop_back();
            if (nodes > node_limit)
                return false;
        }
        return false;
    }
};

}  // namespace detail

/// Either K_k ⪯_{r+1} g (branch sets built from the disjoint neighbourhoods of
/// one stage), or a set B with |B| ≤ k-2 and an r-scattered set of size ≥ m in
/// g - B. Stage i keeps S_i whose i-balls in g - B_i are pairwise disjoint and
/// looks for three shapes of clique minor: balls pairwise adjacent or joined
/// through distinct middle vertices, or k-1 hubs touching the same k-1 balls.
/// Failing that, vertices touching ≥ k-1 balls go into B while the budget
/// lasts and S_{i+1} is an independent set of "distance ≤ 2i+2" in g - B.
/// Results are verified before they are returned.
inline DichotomyResult scattered_or_shallow_clique(const Graph& g, int k, int r, int m,
                                                   const DichotomyOptions& opts = {}) {
    if (k < 2 || r < 0 || m < 1)
        throw DomainError("dichotomy needs k ≥ 2, r ≥ 0 and m ≥ 1");
    const std::size_t ku = static_cast<std::size_t>(k);
    std::vector<bool> blocked(g.size(), false);
    std::vector<int> deleted;
    std::vector<int> s(g.size());
    std::iota(s.begin(), s.end(), 0);

    auto name_sets = [&](const std::vector<std::vector<int>>& sets, const std::vector<int>& centers) {
        MinorEmbedding emb;
        emb.order = k;
        emb.depth = r + 1;
        for (std::size_t j = 0; j < sets.size(); ++j) {
            std::vector<int> set = sets[j];
            std::sort(set.begin(), set.end());
            std::vector<ElementId> ids;
            for (int v : set)
                ids.push_back(g.vertex(v));
            emb.branch_sets.push_back(std::move(ids));
            emb.centers.push_back(g.vertex(centers[j]));
        }
        return emb;
    };
    auto scattered_result = [&](const std::vector<int>& set) {
        ScatteredWitness w;
        w.radius = r;
        for (int v : deleted)
            w.deleted.push_back(g.vertex(v));
        for (int v : set)
            w.scattered.push_back(g.vertex(v));
        if (!verify_scattered_witness(g, w, ku - 2, static_cast<std::size_t>(m)))
            throw Error("internal error: scattered witness failed verification");
        return w;
    };

    for (int i = 0; i <= r; ++i) {
        detail::Stage st(g, i, s, blocked);
        std::vector<int> all(s.size());
        std::iota(all.begin(), all.end(), 0);

        detail::CliqueCaseSearch cs(st, ku, opts.node_limit);
        if (s.size() >= ku && cs.run(all)) {
            std::vector<std::vector<int>> sets;
            std::vector<int> centers;
            for (int c : cs.chosen) {
                sets.push_back(st.balls[static_cast<std::size_t>(c)]);
                centers.push_back(st.centers[static_cast<std::size_t>(c)]);
            }
            for (auto [pair, x] : cs.links)
                sets[static_cast<std::size_t>(pair.first)].push_back(x);
            auto emb = name_sets(sets, centers);
            if (!verify_minor(g, emb))
                throw Error("internal error: clique minor failed verification");
            return emb;
        }

        detail::HubCaseSearch hs{st, ku - 1, opts.node_limit};
        for (std::size_t x = 0; x < g.size(); ++x)
            if (st.touches[x].size() >= ku - 1)
                hs.candidates.push_back(static_cast<int>(x));
        if (s.size() >= ku - 1 && hs.run(0, all)) {
            std::vector<std::vector<int>> sets;
            std::vector<int> centers;
            for (std::size_t j = 0; j + 1 < ku; ++j) {
                sets.push_back(st.balls[static_cast<std::size_t>(hs.common[j])]);
                centers.push_back(st.centers[static_cast<std::size_t>(hs.common[j])]);
            }
            for (std::size_t j = 0; j + 2 < ku; ++j)
                sets[j].push_back(hs.chosen[j]);
            sets.push_back({hs.chosen[ku - 2]});
            centers.push_back(hs.chosen[ku - 2]);
            auto emb = name_sets(sets, centers);
            if (!verify_minor(g, emb))
                throw Error("internal error: hub clique minor failed verification");
            return emb;
        }

        if (i == r)
            break;

        std::vector<int> hub_order = hs.candidates;
        std::stable_sort(hub_order.begin(), hub_order.end(), [&](int a, int b) {
            return st.touches[static_cast<std::size_t>(a)].size() > st.touches[static_cast<std::size_t>(b)].size();
        });
        for (int x : hub_order) {
            if (deleted.size() + 2 >= ku)
                break;
            if (!blocked[static_cast<std::size_t>(x)]) {
                blocked[static_cast<std::size_t>(x)] = true;
                deleted.push_back(x);
            }
        }
        std::vector<int> live;
        for (int v : s)
            if (!blocked[static_cast<std::size_t>(v)])
                live.push_back(v);
        // Independent set in the conflict graph "distance ≤ 2(i+1)".
        std::vector<std::vector<int>> conflict(live.size());
        std::vector<int> pos(g.size(), -1);
        for (std::size_t j = 0; j < live.size(); ++j)
            pos[static_cast<std::size_t>(live[j])] = static_cast<int>(j);
        for (std::size_t j = 0; j < live.size(); ++j) {
            auto d = bfs_distances(g, live[j], 2 * (i + 1), &blocked);
            for (std::size_t u = 0; u < d.size(); ++u)
                if (d[u] != kUnreachable && pos[u] >= 0 && static_cast<std::size_t>(pos[u]) != j)
                    conflict[j].push_back(pos[u]);
        }
        std::vector<int> next;
        if (live.size() <= 64) {
            std::vector<std::uint64_t> adj(live.size(), 0);
            for (std::size_t j = 0; j < live.size(); ++j)
                for (int u : conflict[j])
                    adj[j] |= std::uint64_t{1} << u;
            detail::IndependentSetSearch mis{adj};
            mis.node_limit = opts.node_limit;
            mis.run(live.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << live.size()) - 1, 0);
            for (std::uint64_t b = mis.best; b; b &= b - 1)
                next.push_back(live[static_cast<std::size_t>(std::countr_zero(b))]);
        }
        if (next.empty() && !live.empty()) {
            // Greedy by minimum conflict degree.
            std::vector<std::size_t> idx(live.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return conflict[a].size() < conflict[b].size(); });
            std::vector<bool> gone(live.size(), false);
            for (auto j : idx) {
                if (gone[j])
                    continue;
                next.push_back(live[j]);
                for (int u : conflict[j])
                    gone[static_cast<std::size_t>(u)] = true;
            }
            std::sort(next.begin(), next.end());
        }
        s = std::move(next);
    }

    if (s.size() >= static_cast<std::size_t>(m))
        return scattered_result(s);
    std::size_t live = 0;
    for (bool b : blocked)
        live += b ? 0 : 1;
    if (live <= kExactScatterCap) {
        auto best = max_scattered_set(g, r, ScatterMode::Exact, &blocked);
        if (best.size() >= static_cast<std::size_t>(m))
            return scattered_result(best);
    }
    return Exhausted{"graph too small: after deleting " + std::to_string(deleted.size()) +
                     " vertices no " + std::to_string(r) + "-scattered set of size " + std::to_string(m) +
                     " was found and no K_" + std::to_string(k) + " minor was detected"};
}

}  // namespace hompres
