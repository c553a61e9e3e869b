#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Undirected loopless simple graph on named vertices.
class Graph {
public:
    Graph() = default;

    /// Parallel edges collapse; loops and unknown endpoints are errors.
    Graph(std::vector<ElementId> vertices, const std::vector<std::pair<ElementId, ElementId>>& edges)
        : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {
        build_index();
        for (const auto& [u, v] : edges)
            add_edge(require_index(u), require_index(v));
        finish();
    }

    /// Index-based constructor; `adjacency[i]` lists neighbours of vertex i.
    Graph(std::vector<ElementId> vertices, std::vector<std::vector<int>> adjacency)
        : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {
        if (adjacency.size() != vertices_.size())
            throw DomainError("adjacency list size does not match vertex count");
        build_index();
        for (std::size_t u = 0; u < adjacency.size(); ++u)
            for (int v : adjacency[u])
                add_edge(static_cast<int>(u), v);
        finish();
    }

    /// Vertices named "1".."n" with edges given by index pairs.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        std::vector<ElementId> names;
        for (int i = 1; i <= n; ++i)
            names.push_back(std::to_string(i));
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (auto [u, v] : edges)
            adj.at(static_cast<std::size_t>(u)).push_back(v);
        return Graph(std::move(names), std::move(adj));
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    const std::vector<ElementId>& vertices() const noexcept { return vertices_; }
    const ElementId& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }

    std::optional<int> index_of(const ElementId& id) const {
        auto it = index_.find(id);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }
    int require_index(const ElementId& id) const {
        if (auto i = index_of(id))
            return *i;
        throw UnknownElement(id);
    }

    const std::vector<int>& neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool adjacent(int u, int v) const {
        const auto& n = neighbors(u);
        return std::binary_search(n.begin(), n.end(), v);
    }
    std::size_t edge_count() const noexcept { return edge_count_; }

    /// Edges as index pairs (u < v) in lexicographic order.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t u = 0; u < adjacency_.size(); ++u)
            for (int v : adjacency_[u])
                if (static_cast<int>(u) < v)
                    out.emplace_back(static_cast<int>(u), v);
        return out;
    }

    /// Equality of vertex sets and edge sets by name.
    friend bool operator==(const Graph& a, const Graph& b) {
        if (a.size() != b.size() || a.edge_count() != b.edge_count())
            return false;
        for (const auto& v : a.vertices_)
            if (!b.index_of(v))
                return false;
        for (auto [u, v] : a.edges())
            if (!b.adjacent(*b.index_of(a.vertex(u)), *b.index_of(a.vertex(v))))
                return false;
        return true;
    }

private:
    void build_index() {
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (!index_.emplace(vertices_[i], static_cast<int>(i)).second)
                throw DomainError("vertex '" + vertices_[i] + "' declared twice");
    }
    void add_edge(int u, int v) {
        const int n = static_cast<int>(vertices_.size());
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw DomainError("edge endpoint out of range");
        if (u == v)
            throw DomainError("loop at vertex '" + vertices_[static_cast<std::size_t>(u)] + "'");
        adjacency_[static_cast<std::size_t>(u)].push_back(v);
        adjacency_[static_cast<std::size_t>(v)].push_back(u);
    }
    void finish() {
        edge_count_ = 0;
        for (auto& n : adjacency_) {
            std::sort(n.begin(), n.end());
            n.erase(std::unique(n.begin(), n.end()), n.end());
            edge_count_ += n.size();
        }
        edge_count_ /= 2;
    }

    std::vector<ElementId> vertices_;
    std::vector<std::vector<int>> adjacency_;
    std::unordered_map<ElementId, int> index_;
    std::size_t edge_count_ = 0;
};

/// Vertices are the universe; x ≠ y are adjacent iff they share a tuple.
inline Graph gaifman_graph(const Structure& a) {
    std::vector<std::vector<int>> adj(a.size());
    for (const auto& rel : a.relations())
        for (const auto& t : rel)
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j])
                        adj[static_cast<std::size_t>(t[i])].push_back(t[j]);
    return Graph(a.universe(), std::move(adj));
}

inline constexpr int kUnreachable = -1;

/// BFS distances from `source`; kUnreachable for other components. Vertices
/// flagged in `blocked` are treated as deleted. With `limit` ≥ 0 the search
/// stops expanding at that depth.
inline std::vector<int> bfs_distances(const Graph& g, int source, int limit = -1,
                                      const std::vector<bool>* blocked = nullptr) {
    std::vector<int> dist(g.size(), kUnreachable);
    if (blocked && (*blocked)[static_cast<std::size_t>(source)])
        return dist;
    std::deque<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        int du = dist[static_cast<std::size_t>(u)];
        if (limit >= 0 && du >= limit)
            continue;
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] != kUnreachable)
                continue;
            if (blocked && (*blocked)[static_cast<std::size_t>(v)])
                continue;
            dist[static_cast<std::size_t>(v)] = du + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

/// Shortest-path length; std::nullopt stands for infinity.
inline std::optional<std::size_t> distance(const Graph& g, const ElementId& u, const ElementId& v) {
    int s = g.require_index(u);
    int t = g.require_index(v);
    int d = bfs_distances(g, s)[static_cast<std::size_t>(t)];
    if (d == kUnreachable)
        return std::nullopt;
    return static_cast<std::size_t>(d);
}

/// Indices of N_r(center), ascending.
inline std::vector<int> ball(const Graph& g, int center, int r, const std::vector<bool>* blocked = nullptr) {
    auto dist = bfs_distances(g, center, r, blocked);
    std::vector<int> out;
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] != kUnreachable && dist[i] <= r)
            out.push_back(static_cast<int>(i));
    return out;
}

inline Graph induced_subgraph(const Graph& g, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> remap(g.size(), -1);
    std::vector<ElementId> names;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        names.push_back(g.vertex(keep[i]));
    }
    std::vector<std::vector<int>> adj(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (int v : g.neighbors(keep[i]))
            if (remap[static_cast<std::size_t>(v)] >= 0)
                adj[i].push_back(remap[static_cast<std::size_t>(v)]);
    return Graph(std::move(names), std::move(adj));
}

inline Graph induced_subgraph(const Graph& g, const std::vector<ElementId>& keep) {
    std::vector<int> idx;
    for (const auto& v : keep)
        idx.push_back(g.require_index(v));
    return induced_subgraph(g, std::move(idx));
}

/// G[V ∖ removed].
inline Graph remove_vertices(const Graph& g, const std::vector<ElementId>& removed) {
    std::vector<bool> gone(g.size(), false);
    for (const auto& v : removed)
        gone[static_cast<std::size_t>(g.require_index(v))] = true;
    std::vector<int> keep;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!gone[i])
            keep.push_back(static_cast<int>(i));
    return induced_subgraph(g, std::move(keep));
}

struct GraphNeighborhood {
    std::vector<ElementId> vertices;
    Graph induced;
};

struct StructureNeighborhood {
    std::vector<ElementId> elements;
    Structure induced;
};

inline GraphNeighborhood neighborhood(const Graph& g, const ElementId& center, int r) {
    if (r < 0)
        throw DomainError("neighbourhood radius must be nonnegative");
    auto idx = ball(g, g.require_index(center), r);
    GraphNeighborhood out{{}, induced_subgraph(g, idx)};
    for (int i : idx)
        out.vertices.push_back(g.vertex(i));
    return out;
}

/// N_r(center) in the Gaifman graph together with the substructure it induces.
inline StructureNeighborhood neighborhood(const Structure& a, const ElementId& center, int r) {
    if (r < 0)
        throw DomainError("neighbourhood radius must be nonnegative");
    int c = a.require_index(center);
    auto idx = ball(gaifman_graph(a), c, r);
    StructureNeighborhood out{{}, induced_substructure(a, idx)};
    for (int i : idx)
        out.elements.push_back(a.element(i));
    return out;
}

/// Graph as a structure over the single symbol E/2, both orientations stored.
inline Structure graph_structure(const Graph& g) {
    std::vector<std::vector<Tuple>> rels(1);
    for (auto [u, v] : g.edges()) {
        rels[0].push_back({u, v});
        rels[0].push_back({v, u});
    }
    return Structure(Vocabulary{{"E", 2}}, g.vertices(), std::move(rels));
}

/// Connected components as ascending index lists.
inline std::vector<std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.size(), -1);
    std::vector<std::vector<int>> out;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (comp[s] >= 0)
            continue;
        auto dist = bfs_distances(g, static_cast<int>(s));
        out.emplace_back();
        for (std::size_t i = 0; i < dist.size(); ++i)
            if (dist[i] != kUnreachable) {
                comp[i] = static_cast<int>(out.size() - 1);
                out.back().push_back(static_cast<int>(i));
            }
    }
    return out;
}

}  // namespace hompres
