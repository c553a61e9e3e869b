#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hompres/error.hpp"

namespace hompres {

/// Elements are opaque tokens so that renamings stay visible in certificates.
using ElementId = std::string;

/// A tuple of element indices into a structure's universe.
using Tuple = std::vector<int>;

struct Symbol {
    std::string name;
    int arity = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Finite ordered list of relation symbols with pairwise distinct names.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::initializer_list<Symbol> symbols) : Vocabulary(std::vector<Symbol>(symbols)) {}
    explicit Vocabulary(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const auto& s = symbols_[i];
            if (s.name.empty())
                throw DomainError("relation symbol with empty name");
            if (s.arity < 0)
                throw DomainError("negative arity for symbol '" + s.name + "'");
            if (!index_.emplace(s.name, i).second)
                throw DomainError("duplicate relation symbol '" + s.name + "'");
        }
    }

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    const Symbol& operator[](std::size_t i) const { return symbols_.at(i); }

    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const std::string& name) const {
        if (auto i = find(name))
            return *i;
        throw DomainError("unknown relation symbol '" + name + "'");
    }

    int max_arity() const noexcept {
        int m = 0;
        for (const auto& s : symbols_)
            m = std::max(m, s.arity);
        return m;
    }

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.symbols_ == b.symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Unvalidated structure description, as read from text or assembled by hand.
struct RawStructure {
    Vocabulary vocabulary;
    std::vector<ElementId> universe;
    std::vector<std::pair<std::string, std::vector<ElementId>>> facts;
};

struct Violation {
    enum class Kind { DuplicateElement, UnknownSymbol, Arity, Membership };
    Kind kind;
    std::string symbol;
    std::vector<ElementId> tuple;
    std::string message;
};

inline std::vector<Violation> validate_structure(const RawStructure& raw) {
    std::vector<Violation> out;
    std::set<ElementId> seen;
    for (const auto& e : raw.universe)
        if (!seen.insert(e).second)
            out.push_back({Violation::Kind::DuplicateElement, "", {e}, "element '" + e + "' declared twice"});
    for (const auto& [name, tuple] : raw.facts) {
        auto sym = raw.vocabulary.find(name);
        if (!sym) {
            out.push_back({Violation::Kind::UnknownSymbol, name, tuple, "unknown symbol '" + name + "'"});
            continue;
        }
        int arity = raw.vocabulary[*sym].arity;
        if (static_cast<int>(tuple.size()) != arity) {
            out.push_back({Violation::Kind::Arity, name, tuple,
                           "symbol '" + name + "' has arity " + std::to_string(arity) + " but tuple has " +
                               std::to_string(tuple.size()) + " components"});
            continue;
        }
        for (const auto& e : tuple) {
            if (!seen.count(e)) {
                out.push_back({Violation::Kind::Membership, name, tuple,
                               "tuple of '" + name + "' mentions element '" + e + "' outside the universe"});
                break;
            }
        }
    }
    return out;
}

/// A finite structure. Immutable once built; relations are kept sorted and
/// duplicate-free. A 0-ary symbol is true iff its relation holds the empty tuple.
class Structure {
public:
    Structure() = default;
    explicit Structure(Vocabulary vocabulary)
        : vocabulary_(std::move(vocabulary)), relations_(vocabulary_.size()) {
        build_index();
    }

    /// Index-based constructor; tuples are validated and normalized.
    Structure(Vocabulary vocabulary, std::vector<ElementId> universe, std::vector<std::vector<Tuple>> relations)
        : vocabulary_(std::move(vocabulary)), universe_(std::move(universe)), relations_(std::move(relations)) {
        if (relations_.size() != vocabulary_.size())
            throw DomainError("relation count does not match vocabulary");
        const int n = static_cast<int>(universe_.size());
        for (std::size_t s = 0; s < relations_.size(); ++s) {
            for (const auto& t : relations_[s]) {
                if (static_cast<int>(t.size()) != vocabulary_[s].arity)
                    throw DomainError("arity mismatch in relation '" + vocabulary_[s].name + "'");
                for (int x : t)
                    if (x < 0 || x >= n)
                        throw DomainError("tuple index out of range in '" + vocabulary_[s].name + "'");
            }
            std::sort(relations_[s].begin(), relations_[s].end());
            relations_[s].erase(std::unique(relations_[s].begin(), relations_[s].end()), relations_[s].end());
        }
        build_index();
    }

    static Structure from_raw(const RawStructure& raw) {
        auto violations = validate_structure(raw);
        if (!violations.empty()) {
            std::string msg = "invalid structure:";
            for (const auto& v : violations)
                msg += "\n  " + v.message;
            throw DomainError(msg);
        }
        std::unordered_map<ElementId, int> idx;
        for (std::size_t i = 0; i < raw.universe.size(); ++i)
            idx.emplace(raw.universe[i], static_cast<int>(i));
        std::vector<std::vector<Tuple>> rels(raw.vocabulary.size());
        for (const auto& [name, tuple] : raw.facts) {
            Tuple t;
            t.reserve(tuple.size());
            for (const auto& e : tuple)
                t.push_back(idx.at(e));
            rels[raw.vocabulary.index_of(name)].push_back(std::move(t));
        }
        return Structure(raw.vocabulary, raw.universe, std::move(rels));
    }

    const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
    std::size_t size() const noexcept { return universe_.size(); }
    bool empty() const noexcept { return universe_.empty(); }
    const std::vector<ElementId>& universe() const noexcept { return universe_; }
    const ElementId& element(int i) const { return universe_.at(static_cast<std::size_t>(i)); }

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
    bool contains(const ElementId& id) const { return index_.count(id) != 0; }

    const std::vector<Tuple>& relation(std::size_t symbol) const { return relations_.at(symbol); }
    const std::vector<Tuple>& relation(const std::string& name) const {
        return relations_.at(vocabulary_.index_of(name));
    }
    const std::vector<std::vector<Tuple>>& relations() const noexcept { return relations_; }

    bool holds(std::size_t symbol, std::span<const int> t) const {
        const auto& dense = dense_[symbol];
        if (!dense.empty()) {
            std::size_t code = 0;
            for (int x : t)
                code = code * universe_.size() + static_cast<std::size_t>(x);
            return dense[code] != 0;
        }
        const auto& rel = relations_[symbol];
        return std::binary_search(rel.begin(), rel.end(), t,
                                  [](const auto& a, const auto& b) {
                                      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                                  });
    }

    /// Truth value of a 0-ary symbol.
    bool truth(std::size_t symbol) const { return !relations_.at(symbol).empty(); }

    std::size_t fact_count() const noexcept {
        std::size_t c = 0;
        for (const auto& r : relations_)
            c += r.size();
        return c;
    }

    /// All facts as (symbol index, tuple), in vocabulary order then tuple order.
    std::vector<std::pair<std::size_t, Tuple>> facts() const {
        std::vector<std::pair<std::size_t, Tuple>> out;
        for (std::size_t s = 0; s < relations_.size(); ++s)
            for (const auto& t : relations_[s])
                out.emplace_back(s, t);
        return out;
    }

    std::vector<ElementId> ids(const Tuple& t) const {
        std::vector<ElementId> out;
        out.reserve(t.size());
        for (int x : t)
            out.push_back(element(x));
        return out;
    }

    RawStructure to_raw() const {
        RawStructure raw{vocabulary_, universe_, {}};
        for (const auto& [s, t] : facts())
            raw.facts.emplace_back(vocabulary_[s].name, ids(t));
        return raw;
    }

    /// Equality up to the order in which the universe is listed.
    friend bool operator==(const Structure& a, const Structure& b) {
        if (!(a.vocabulary_ == b.vocabulary_) || a.size() != b.size())
            return false;
        for (const auto& e : a.universe_)
            if (!b.contains(e))
                return false;
        for (std::size_t s = 0; s < a.relations_.size(); ++s) {
            if (a.relations_[s].size() != b.relations_[s].size())
                return false;
            for (const auto& t : a.relations_[s]) {
                Tuple u;
                for (int x : t)
                    u.push_back(b.require_index(a.element(x)));
                if (!b.holds(s, u))
                    return false;
            }
        }
        return true;
    }

private:
    void build_index() {
        index_.clear();
        for (std::size_t i = 0; i < universe_.size(); ++i)
            if (!index_.emplace(universe_[i], static_cast<int>(i)).second)
                throw DomainError("element '" + universe_[i] + "' declared twice");
        constexpr std::size_t kDenseLimit = std::size_t{1} << 16;
        dense_.assign(relations_.size(), {});
        for (std::size_t s = 0; s < relations_.size(); ++s) {
            std::size_t cells = 1;
            bool fits = true;
            for (int i = 0; i < vocabulary_[s].arity && fits; ++i) {
                cells *= std::max<std::size_t>(universe_.size(), 1);
                fits = cells <= kDenseLimit;
            }
            if (!fits)
                continue;
            dense_[s].assign(cells, 0);
            for (const auto& t : relations_[s]) {
                std::size_t code = 0;
                for (int x : t)
                    code = code * universe_.size() + static_cast<std::size_t>(x);
                dense_[s][code] = 1;
            }
        }
    }

    Vocabulary vocabulary_;
    std::vector<ElementId> universe_;
    std::vector<std::vector<Tuple>> relations_;
    std::unordered_map<ElementId, int> index_;
    std::vector<std::vector<std::uint8_t>> dense_;
};

/// Convenience for assembling structures by element id.
class StructureBuilder {
public:
    explicit StructureBuilder(Vocabulary vocabulary) { raw_.vocabulary = std::move(vocabulary); }

    StructureBuilder& element(ElementId id) {
        raw_.universe.push_back(std::move(id));
        return *this;
    }
    StructureBuilder& elements(std::initializer_list<ElementId> ids) {
        for (const auto& id : ids)
            raw_.universe.push_back(id);
        return *this;
    }
    StructureBuilder& fact(std::string symbol, std::vector<ElementId> tuple = {}) {
        raw_.facts.emplace_back(std::move(symbol), std::move(tuple));
        return *this;
    }

    const RawStructure& raw() const noexcept { return raw_; }
    Structure build() const { return Structure::from_raw(raw_); }

private:
    RawStructure raw_;
};

namespace detail {

inline void require_same_vocabulary(const Structure& a, const Structure& b) {
    if (!(a.vocabulary() == b.vocabulary()))
        throw VocabularyMismatch("structures are over different vocabularies");
}

inline bool relations_within(const Structure& b, const Structure& a, bool require_equal) {
    for (std::size_t s = 0; s < b.vocabulary().size(); ++s) {
        for (const auto& t : b.relation(s)) {
            Tuple u;
            u.reserve(t.size());
            for (int x : t)
                u.push_back(*a.index_of(b.element(x)));
            if (!a.holds(s, u))
                return false;
        }
        if (!require_equal)
            continue;
        // Every tuple of a that lies inside B must appear in b.
        for (const auto& t : a.relation(s)) {
            Tuple u;
            bool inside = true;
            for (int x : t) {
                auto j = b.index_of(a.element(x));
                if (!j) {
                    inside = false;
                    break;
                }
                u.push_back(*j);
            }
            if (inside && !b.holds(s, u))
                return false;
        }
    }
    return true;
}

}  // namespace detail

/// b ⊆ a: universe containment and relation-wise containment.
inline bool is_substructure(const Structure& b, const Structure& a) {
    detail::require_same_vocabulary(a, b);
    for (const auto& e : b.universe())
        if (!a.contains(e))
            return false;
    return detail::relations_within(b, a, false);
}

/// b ⊆ a and every relation of b is the trace of a's relation on b's universe.
inline bool is_induced_substructure(const Structure& b, const Structure& a) {
    detail::require_same_vocabulary(a, b);
    for (const auto& e : b.universe())
        if (!a.contains(e))
            return false;
    return detail::relations_within(b, a, true);
}

/// Renames every element through `rename`, which must be injective.
inline Structure rename_elements(const Structure& a, const std::function<ElementId(const ElementId&)>& rename) {
    std::vector<ElementId> universe;
    universe.reserve(a.size());
    for (const auto& e : a.universe())
        universe.push_back(rename(e));
    return Structure(a.vocabulary(), std::move(universe), a.relations());
}

/// Disjoint union; left elements are prefixed "l.", right elements "r.".
inline Structure disjoint_union(const Structure& a, const Structure& b) {
    detail::require_same_vocabulary(a, b);
    std::vector<ElementId> universe;
    universe.reserve(a.size() + b.size());
    for (const auto& e : a.universe())
        universe.push_back("l." + e);
    for (const auto& e : b.universe())
        universe.push_back("r." + e);
    const int shift = static_cast<int>(a.size());
    auto rels = a.relations();
    for (std::size_t s = 0; s < rels.size(); ++s)
        for (auto t : b.relation(s)) {
            for (auto& x : t)
                x += shift;
            rels[s].push_back(std::move(t));
        }
    return Structure(a.vocabulary(), std::move(universe), std::move(rels));
}

/// Disjoint union of several copies; the i-th part's elements are prefixed "<i>." (0-based).
inline Structure disjoint_union(std::span<const Structure> parts, const Vocabulary& vocabulary) {
    std::vector<ElementId> universe;
    std::vector<std::vector<Tuple>> rels(vocabulary.size());
    int shift = 0;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        if (!(parts[p].vocabulary() == vocabulary))
            throw VocabularyMismatch("structures are over different vocabularies");
        for (const auto& e : parts[p].universe())
            universe.push_back(std::to_string(p) + "." + e);
        for (std::size_t s = 0; s < rels.size(); ++s)
            for (auto t : parts[p].relation(s)) {
                for (auto& x : t)
                    x += shift;
                rels[s].push_back(std::move(t));
            }
        shift += static_cast<int>(parts[p].size());
    }
    return Structure(vocabulary, std::move(universe), std::move(rels));
}

/// Substructure induced on the given element indices (kept in ascending order).
inline Structure induced_substructure(const Structure& a, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> remap(a.size(), -1);
    std::vector<ElementId> universe;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        universe.push_back(a.element(keep[i]));
    }
    std::vector<std::vector<Tuple>> rels(a.vocabulary().size());
    for (std::size_t s = 0; s < rels.size(); ++s)
        for (const auto& t : a.relation(s)) {
            Tuple u;
            bool inside = true;
            for (int x : t) {
                if (remap[static_cast<std::size_t>(x)] < 0) {
                    inside = false;
                    break;
                }
                u.push_back(remap[static_cast<std::size_t>(x)]);
            }
            if (inside)
                rels[s].push_back(std::move(u));
        }
    return Structure(a.vocabulary(), std::move(universe), std::move(rels));
}

inline Structure induced_substructure(const Structure& a, const std::vector<ElementId>& keep) {
    std::vector<int> idx;
    idx.reserve(keep.size());
    for (const auto& e : keep)
        idx.push_back(a.require_index(e));
    return induced_substructure(a, std::move(idx));
}

/// A substructure of a fixed ambient structure, as membership masks over the
/// ambient universe and over the ambient's fact list (Structure::facts order).
struct Selection {
    std::vector<bool> elements;
    std::vector<bool> facts;

    static Selection full(const Structure& a) {
        return Selection{std::vector<bool>(a.size(), true), std::vector<bool>(a.fact_count(), true)};
    }
    friend auto operator<=>(const Selection&, const Selection&) = default;
    friend bool operator==(const Selection&, const Selection&) = default;
};

/// Materializes a selection; surviving elements keep their ids.
inline Structure materialize(const Structure& ambient, const std::vector<std::pair<std::size_t, Tuple>>& facts,
                             const Selection& sel) {
    std::vector<int> remap(ambient.size(), -1);
    std::vector<ElementId> universe;
    for (std::size_t i = 0; i < ambient.size(); ++i)
        if (sel.elements[i]) {
            remap[i] = static_cast<int>(universe.size());
            universe.push_back(ambient.element(static_cast<int>(i)));
        }
    std::vector<std::vector<Tuple>> rels(ambient.vocabulary().size());
    for (std::size_t f = 0; f < facts.size(); ++f) {
        if (!sel.facts[f])
            continue;
        Tuple u;
        for (int x : facts[f].second)
            u.push_back(remap[static_cast<std::size_t>(x)]);
        rels[facts[f].first].push_back(std::move(u));
    }
    return Structure(ambient.vocabulary(), std::move(universe), std::move(rels));
}

/// One-step shrinkings of a selection: first every single fact deletion, then
/// every single element deletion together with the facts through it.
inline std::vector<Selection> shrink_steps(const std::vector<std::pair<std::size_t, Tuple>>& facts,
                                           const Selection& sel) {
    std::vector<Selection> out;
    for (std::size_t f = 0; f < facts.size(); ++f)
        if (sel.facts[f]) {
            Selection c = sel;
            c.facts[f] = false;
            out.push_back(std::move(c));
        }
    for (std::size_t e = 0; e < sel.elements.size(); ++e) {
        if (!sel.elements[e])
            continue;
        Selection c = sel;
        c.elements[e] = false;
        for (std::size_t f = 0; f < facts.size(); ++f)
            if (c.facts[f] &&
                std::find(facts[f].second.begin(), facts[f].second.end(), static_cast<int>(e)) !=
                    facts[f].second.end())
                c.facts[f] = false;
        out.push_back(std::move(c));
    }
    return out;
}

/// Visits proper substructures of `a` breadth-first from `a` (fact deletions
/// before element deletions at each step), each distinct one once. Only those
/// accepted by `predicate` are passed to `visit` and counted against `budget`;
/// `visit` may return false to stop early.
inline void for_each_substructure(const Structure& a, const std::function<bool(const Structure&)>& predicate,
                                  std::size_t budget, const std::function<bool(const Structure&)>& visit) {
    if (budget == 0)
        return;
    const auto facts = a.facts();
    std::set<Selection> seen;
    std::vector<Selection> frontier{Selection::full(a)};
    seen.insert(frontier.front());
    std::size_t yielded = 0;
    while (!frontier.empty()) {
        std::vector<Selection> next;
        for (const auto& sel : frontier) {
            for (auto& child : shrink_steps(facts, sel)) {
                if (!seen.insert(child).second)
                    continue;
                Structure s = materialize(a, facts, child);
                if (!predicate || predicate(s)) {
                    ++yielded;
                    if (!visit(s) || yielded >= budget)
                        return;
                }
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
}

inline std::vector<Structure> enumerate_substructures(const Structure& a,
                                                      const std::function<bool(const Structure&)>& predicate,
                                                      std::size_t budget) {
    std::vector<Structure> out;
    for_each_substructure(a, predicate, budget, [&](const Structure& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

}  // namespace hompres
