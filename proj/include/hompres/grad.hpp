#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>
#include <boost/rational.hpp>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"
#include "hompres/minor.hpp"

namespace hompres {

using Rational = boost::rational<long long>;

struct DensestSubgraph {
    Rational density{0};
    std::vector<int> vertices;
};

namespace detail {

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long long,
                    boost::property<boost::edge_residual_capacity_t, long long,
                                    boost::property<boost::edge_reverse_t, FlowTraits::edge_descriptor>>>>;

/// Vertex set S maximising |E(S)| - g|S| with g = p/q, via a minimum cut:
/// s→v carries mq, v→t carries mq + 2p - deg(v)q, each edge q both ways.
/// Returns the source side of a minimum cut (empty when no S beats g).
inline std::vector<int> denser_than(const std::vector<std::pair<int, int>>& edges, std::size_t n, long long p,
                                    long long q) {
    long long m = static_cast<long long>(edges.size());
    std::vector<long long> deg(n, 0);
    for (auto [u, v] : edges) {
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
    }
    FlowGraph fg(n + 2);
    auto cap = boost::get(boost::edge_capacity, fg);
    auto rev = boost::get(boost::edge_reverse, fg);
    auto res = boost::get(boost::edge_residual_capacity, fg);
    auto add = [&](std::size_t a, std::size_t b, long long c) {
        auto e = boost::add_edge(a, b, fg).first;
        auto r = boost::add_edge(b, a, fg).first;
        cap[e] = c;
        cap[r] = 0;
        rev[e] = r;
        rev[r] = e;
    };
    std::size_t s = n, t = n + 1;
    for (std::size_t v = 0; v < n; ++v) {
        add(s, v, m * q);
        add(v, t, m * q + 2 * p - deg[v] * q);
    }
    for (auto [u, v] : edges) {
        add(static_cast<std::size_t>(u), static_cast<std::size_t>(v), q);
        add(static_cast<std::size_t>(v), static_cast<std::size_t>(u), q);
    }
    boost::push_relabel_max_flow(fg, s, t);
    std::vector<bool> seen(n + 2, false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto [it, end] = boost::out_edges(u, fg); it != end; ++it) {
            auto w = boost::target(*it, fg);
            if (res[*it] > 0 && !seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (std::size_t v = 0; v < n; ++v)
        if (seen[v])
            out.push_back(static_cast<int>(v));
    return out;
}

inline long long edges_inside(const std::vector<std::pair<int, int>>& edges, const std::vector<int>& set,
                              std::size_t n) {
    std::vector<bool> in(n, false);
    for (int v : set)
        in[static_cast<std::size_t>(v)] = true;
    long long c = 0;
    for (auto [u, v] : edges)
        if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)])
            ++c;
    return c;
}

}  // namespace detail

/// Exact densest subgraph max |E(S)|/|S| by binary search over the candidate
/// fractions e/s, each step one max-flow computation.
inline DensestSubgraph densest_subgraph(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    DensestSubgraph best;
    if (n == 0)
        return best;
    best.vertices = {0};
    if (edges.empty())
        return best;
    std::vector<Rational> cand;
    for (long long e = 0; e <= static_cast<long long>(edges.size()); ++e)
        for (long long s = 1; s <= static_cast<long long>(n); ++s)
            if (e * 2 <= s * (s - 1))
                cand.emplace_back(e, s);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    // Largest j such that some subgraph is strictly denser than cand[j].
    std::size_t lo = 0, hi = cand.size() - 1;
    std::vector<int> witness = detail::denser_than(edges, n, cand[0].numerator(), cand[0].denominator());
    if (witness.empty())
        return best;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        auto s = detail::denser_than(edges, n, cand[mid].numerator(), cand[mid].denominator());
        if (s.empty()) {
            hi = mid - 1;
        } else {
            lo = mid;
            witness = std::move(s);
        }
    }
    best.vertices = witness;
    best.density = Rational(detail::edges_inside(edges, witness, n), static_cast<long long>(witness.size()));
    return best;
}

inline DensestSubgraph densest_subgraph(const Graph& g) { return densest_subgraph(g.size(), g.edges()); }

struct GradResult {
    Rational value{0};
    bool exact = true;
    /// A depth-r minor attaining the value: its branch sets in the host.
    std::vector<std::vector<ElementId>> branch_sets;
};

inline constexpr std::size_t kExactGradCap = 12;

namespace detail {

struct PartitionSearch {
    const std::vector<std::uint64_t>& adj;
    const std::vector<std::uint64_t>& balls;
    std::size_t n;
    long long total_edges;
    std::vector<std::uint64_t> parts{};
    Rational best{0};
    std::vector<std::uint64_t> best_parts{};

    bool depth_ok(std::uint64_t s) const { return depth_center(balls, s).has_value(); }

    bool connected(std::uint64_t s) const {
        std::uint64_t reach = s & -s, prev = 0;
        while (reach != prev) {
            prev = reach;
            reach |= neighbor_mask(adj, reach) & s;
        }
        return reach == s;
    }

    // max over sizes t of min((t-1)/2, e/t): densest possible quotient.
    Rational bound(std::size_t max_parts, long long e) const {
        Rational ub{0};
        for (std::size_t t = 1; t <= max_parts; ++t)
            ub = std::max(ub, std::min(Rational(static_cast<long long>(t) - 1, 2), Rational(e, static_cast<long long>(t))));
        return ub;
    }

    void finish() {
        for (auto s : parts)
            if (!connected(s))
                return;
        std::vector<std::pair<int, int>> qe;
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                if (neighbor_mask(adj, parts[i]) & parts[j])
                    qe.emplace_back(static_cast<int>(i), static_cast<int>(j));
        if (bound(parts.size(), static_cast<long long>(qe.size())) <= best)
            return;
        auto d = densest_subgraph(parts.size(), qe);
        if (d.density > best) {
            best = d.density;
            best_parts.clear();
            for (int i : d.vertices)
                best_parts.push_back(parts[static_cast<std::size_t>(i)]);
        }
    }

    void run(std::size_t v) {
        if (bound(parts.size() + (n - v), total_edges) <= best)
            return;
        if (v == n) {
            finish();
            return;
        }
        std::uint64_t bit = std::uint64_t{1} << v;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (!depth_ok(parts[i] | bit))
                continue;
            parts[i] |= bit;
            run(v + 1);
            parts[i] &= ~bit;
        }
        parts.push_back(bit);
        run(v + 1);
        parts.pop_back();
    }
};

}  // namespace detail

/// ∇_r(h). r = 0 is the densest subgraph; r ≥ 1 maximises the densest
/// subgraph of the quotient over all partitions into connected parts each
/// inside some r-ball. Above `cap` vertices the r ≥ 1 answer falls back to
/// ∇_0, a lower bound, and `exact` is false.
inline GradResult grad(const Graph& h, int r, std::size_t cap = kExactGradCap) {
    if (r < 0)
        throw DomainError("grad radius must be nonnegative");
    GradResult out;
    auto to_sets = [&](const std::vector<std::vector<int>>& sets) {
        out.branch_sets.clear();
        for (const auto& s : sets) {
            std::vector<ElementId> ids;
            for (int v : s)
                ids.push_back(h.vertex(v));
            out.branch_sets.push_back(std::move(ids));
        }
    };
    if (r == 0 || h.size() > std::min<std::size_t>(cap, 64)) {
        auto d = densest_subgraph(h);
        out.value = d.density;
        out.exact = r == 0;
        std::vector<std::vector<int>> sets;
        for (int v : d.vertices)
            sets.push_back({v});
        to_sets(sets);
        return out;
    }
    auto adj = detail::graph_masks(h);
    auto balls = detail::ball_masks(h, r);
    detail::PartitionSearch search{adj, balls, h.size(), static_cast<long long>(h.edge_count())};
    search.run(0);
    out.value = search.best;
    std::vector<std::vector<int>> sets;
    for (auto s : search.best_parts) {
        std::vector<int> set;
        for (std::uint64_t b = s; b; b &= b - 1)
            set.push_back(std::countr_zero(b));
        sets.push_back(std::move(set));
    }
    if (sets.empty() && h.size() > 0)
        sets.push_back({0});
    to_sets(sets);
    return out;
}

inline std::string to_string(const Rational& q) {
    if (q.denominator() == 1)
        return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

}  // namespace hompres
