#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/formula.hpp"
#include "hompres/homomorphism.hpp"
#include "hompres/isomorphism.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Injective homomorphism b → a (b is isomorphic to a substructure of a).
inline std::optional<HomCertificate> find_embedding(const Structure& b, const Structure& a) {
    detail::require_same_vocabulary(b, a);
    const std::size_t n = b.size();
    if (n > a.size() || b.fact_count() > a.fact_count())
        return std::nullopt;
    // Tuples of b indexed by the largest element they mention, so each is
    // checked as soon as it is fully assigned.
    std::vector<std::vector<std::pair<std::size_t, const Tuple*>>> due(n);
    const auto& vocab = b.vocabulary();
    for (std::size_t s = 0; s < vocab.size(); ++s) {
        if (vocab[s].arity == 0) {
            if (b.truth(s) && !a.truth(s))
                return std::nullopt;
            continue;
        }
        for (const auto& t : b.relation(s))
            due[static_cast<std::size_t>(*std::max_element(t.begin(), t.end()))].emplace_back(s, &t);
    }
    std::vector<int> image(n, -1);
    std::vector<bool> used(a.size(), false);
    Tuple buf;
    auto place = [&](auto& self, std::size_t v) -> bool {
        if (v == n)
            return true;
        for (std::size_t w = 0; w < a.size(); ++w) {
            if (used[w])
                continue;
            image[v] = static_cast<int>(w);
            bool ok = true;
            for (const auto& [s, t] : due[v]) {
                buf.clear();
                for (int x : *t)
                    buf.push_back(image[static_cast<std::size_t>(x)]);
                if (!a.holds(s, buf)) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            used[w] = true;
            if (self(self, v + 1))
                return true;
            used[w] = false;
        }
        image[v] = -1;
        return false;
    };
    if (!place(place, 0))
        return std::nullopt;
    HomCertificate out;
    for (std::size_t v = 0; v < n; ++v)
        out.emplace(b.element(static_cast<int>(v)), a.element(image[v]));
    return out;
}

inline bool embeds_into(const Structure& b, const Structure& a) { return find_embedding(b, a).has_value(); }

using StructureVisitor = std::function<bool(const Structure&)>;

/// A class 𝒞 of finite structures: a membership predicate plus a generator
/// that lists every member with at most `bound` elements up to isomorphism
/// (repeats allowed), in nondecreasing size. Visitors return false to stop.
struct ClassSpec {
    std::string name;
    Vocabulary vocabulary;
    std::size_t size_bound = 0;
    bool closed_under_substructures = true;
    bool closed_under_unions = true;
    std::function<bool(const Structure&)> member;
    std::function<void(std::size_t, const StructureVisitor&)> generate;

    bool contains(const Structure& a) const {
        return a.vocabulary() == vocabulary && (!member || member(a));
    }
};

inline constexpr std::size_t kGeneratorLimit = std::size_t{1} << 26;

namespace detail {

/// Visits every fact subset of `full` (all elements kept), optionally only
/// those accepted by `keep`. Returns false if the visitor stopped early.
inline bool for_each_fact_subset(const Structure& full, const std::function<bool(std::uint64_t)>& keep,
                                 const StructureVisitor& visit) {
    const auto facts = full.facts();
    if (facts.size() >= 63 || (std::uint64_t{1} << facts.size()) > kGeneratorLimit)
        throw SearchLimitExceeded("generator would visit 2^" + std::to_string(facts.size()) + " structures");
    const std::uint64_t total = std::uint64_t{1} << facts.size();
    const std::size_t symbols = full.vocabulary().size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (keep && !keep(mask))
            continue;
        std::vector<std::vector<Tuple>> rels(symbols);
        for (std::size_t f = 0; f < facts.size(); ++f)
            if (mask >> f & 1)
                rels[facts[f].first].push_back(facts[f].second);
        if (!visit(Structure(full.vocabulary(), full.universe(), std::move(rels))))
            return false;
    }
    return true;
}

inline std::vector<ElementId> numbered_universe(std::size_t n) {
    std::vector<ElementId> out;
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back(std::to_string(i));
    return out;
}

/// The structure on 1..n holding every tuple of every symbol.
inline Structure complete_structure(const Vocabulary& v, std::size_t n) {
    std::vector<std::vector<Tuple>> rels(v.size());
    for (std::size_t s = 0; s < v.size(); ++s) {
        if (n == 0 && v[s].arity > 0)
            continue;
        Tuple t(static_cast<std::size_t>(v[s].arity), 0);
        while (true) {
            rels[s].push_back(t);
            std::size_t i = 0;
            while (i < t.size() && t[i] == static_cast<int>(n) - 1)
                t[i++] = 0;
            if (i == t.size())
                break;
            ++t[i];
        }
    }
    return Structure(v, numbered_universe(n), std::move(rels));
}

}  // namespace detail

/// Every structure over `v` with at most `bound` elements.
inline ClassSpec all_structures_class(const Vocabulary& v, std::size_t bound) {
    ClassSpec c;
    c.name = "all";
    c.vocabulary = v;
    c.size_bound = bound;
    c.generate = [v](std::size_t limit, const StructureVisitor& visit) {
        for (std::size_t n = 0; n <= limit; ++n)
            if (!detail::for_each_fact_subset(detail::complete_structure(v, n), {}, visit))
                return;
    };
    return c;
}

inline bool is_simple_graph(const Structure& a) {
    if (a.vocabulary().size() != 1 || a.vocabulary()[0].arity != 2)
        return false;
    for (const auto& t : a.relation(0))
        if (t[0] == t[1] || !a.holds(0, Tuple{t[1], t[0]}))
            return false;
    return true;
}

/// Simple undirected graphs over {E/2}: E symmetric and irreflexive. Closed
/// under induced substructures and disjoint unions, but not under dropping
/// a single E tuple.
inline ClassSpec graph_class(std::size_t bound) {
    ClassSpec c;
    c.name = "graphs";
    c.vocabulary = Vocabulary{{"E", 2}};
    c.size_bound = bound;
    c.closed_under_substructures = false;
    c.member = is_simple_graph;
    c.generate = [v = c.vocabulary](std::size_t limit, const StructureVisitor& visit) {
        for (std::size_t n = 0; n <= limit; ++n) {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < static_cast<int>(n); ++i)
                for (int j = i + 1; j < static_cast<int>(n); ++j)
                    pairs.emplace_back(i, j);
            if ((std::uint64_t{1} << pairs.size()) > kGeneratorLimit)
                throw SearchLimitExceeded("too many graphs on " + std::to_string(n) + " vertices");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
                std::vector<std::vector<Tuple>> rels(1);
                for (std::size_t p = 0; p < pairs.size(); ++p)
                    if (mask >> p & 1) {
                        rels[0].push_back({pairs[p].first, pairs[p].second});
                        rels[0].push_back({pairs[p].second, pairs[p].first});
                    }
                if (!visit(Structure(v, detail::numbered_universe(n), std::move(rels))))
                    return;
            }
        }
    };
    return c;
}

/// A fixed list of structures; membership is isomorphism to a listed one.
inline ClassSpec corpus_class(std::vector<Structure> corpus, std::string name = "corpus") {
    if (corpus.empty())
        throw DomainError("corpus is empty");
    ClassSpec c;
    c.name = std::move(name);
    c.vocabulary = corpus.front().vocabulary();
    for (const auto& s : corpus) {
        if (!(s.vocabulary() == c.vocabulary))
            throw VocabularyMismatch("corpus structures are over different vocabularies");
        c.size_bound = std::max(c.size_bound, s.size());
    }
    c.closed_under_substructures = false;
    c.closed_under_unions = false;
    std::stable_sort(corpus.begin(), corpus.end(),
                     [](const Structure& x, const Structure& y) { return x.size() < y.size(); });
    auto shared = std::make_shared<std::vector<Structure>>(std::move(corpus));
    c.member = [shared](const Structure& a) {
        for (const auto& s : *shared)
            if (is_isomorphic(s, a))
                return true;
        return false;
    };
    c.generate = [shared](std::size_t limit, const StructureVisitor& visit) {
        for (const auto& s : *shared)
            if (s.size() <= limit && !visit(s))
                return;
    };
    return c;
}

/// Visits every proper substructure of `a` once: each element subset, then
/// each subset of the facts living on it. Returns false if stopped early.
inline bool for_each_proper_substructure(const Structure& a, const StructureVisitor& visit,
                                         std::size_t budget = kGeneratorLimit) {
    const std::size_t n = a.size();
    if (n >= 63)
        throw SearchLimitExceeded("too many elements for substructure enumeration");
    const auto facts = a.facts();
    std::vector<std::uint64_t> support;
    for (const auto& f : facts) {
        std::uint64_t m = 0;
        for (int x : f.second)
            m |= std::uint64_t{1} << x;
        support.push_back(m);
    }
    std::size_t visited = 0;
    const std::uint64_t all = n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n));
    for (std::uint64_t keep = 0;; ++keep) {
        std::vector<int> remap(n, -1);
        std::vector<ElementId> universe;
        for (std::size_t e = 0; e < n; ++e)
            if (keep >> e & 1) {
                remap[e] = static_cast<int>(universe.size());
                universe.push_back(a.element(static_cast<int>(e)));
            }
        std::vector<std::size_t> inside;
        for (std::size_t f = 0; f < facts.size(); ++f)
            if ((support[f] & ~keep) == 0)
                inside.push_back(f);
        if (inside.size() >= 63)
            throw SearchLimitExceeded("too many facts for substructure enumeration");
        const std::uint64_t subsets = std::uint64_t{1} << inside.size();
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            if (keep == all && mask == subsets - 1)
                continue;
            if (++visited > budget)
                throw SearchLimitExceeded("substructure budget exhausted");
            std::vector<std::vector<Tuple>> rels(a.vocabulary().size());
            for (std::size_t i = 0; i < inside.size(); ++i)
                if (mask >> i & 1) {
                    Tuple t;
                    for (int x : facts[inside[i]].second)
                        t.push_back(remap[static_cast<std::size_t>(x)]);
                    rels[facts[inside[i]].first].push_back(std::move(t));
                }
            if (!visit(Structure(a.vocabulary(), universe, std::move(rels))))
                return false;
        }
        if (keep == all)
            break;
    }
    return true;
}

/// a ⊨ φ, a ∈ 𝒞, and no proper substructure of a that lies in 𝒞 satisfies φ.
inline bool is_minimal_model(const Structure& a, const Formula& phi, const ClassSpec& cls,
                             std::size_t budget = kGeneratorLimit) {
    CompiledFormula f(phi, a.vocabulary());
    if (!cls.contains(a) || !f.evaluate(a))
        return false;
    bool minimal = true;
    for_each_proper_substructure(
        a,
        [&](const Structure& b) {
            if (f.evaluate(b) && cls.contains(b)) {
                minimal = false;
                return false;
            }
            return true;
        },
        budget);
    return minimal;
}

/// Minimal models of φ in 𝒞 with at most `size_bound` elements, one canonical
/// representative per isomorphism type, ordered by (size, fact count, form).
/// Every model of φ contains a minimal one, so a model is minimal exactly when
/// no smaller minimal model embeds into it; the generator is filtered with
/// that test and the survivors are settled in a final sorted pass.
inline std::vector<Structure> enumerate_minimal_models(const Formula& phi, const ClassSpec& cls,
                                                       std::size_t size_bound,
                                                       std::size_t canonical_cap = kDefaultCanonicalCap) {
    if (!cls.generate)
        throw DomainError("class '" + cls.name + "' has no generator");
    if (size_bound > canonical_cap)
        throw SearchLimitExceeded("size bound " + std::to_string(size_bound) + " exceeds the canonical-form cap " +
                                  std::to_string(canonical_cap));
    CompiledFormula f(phi, cls.vocabulary);
    std::map<CanonicalForm, Structure> candidates;
    auto proper_below = [](const Structure& m, const Structure& a) {
        return (m.size() < a.size() || m.fact_count() < a.fact_count()) && embeds_into(m, a);
    };
    cls.generate(size_bound, [&](const Structure& a) {
        if (!f.evaluate(a))
            return true;
        for (const auto& [form, m] : candidates)
            if (proper_below(m, a))
                return true;
        auto form = canonical_form(a, canonical_cap);
        if (!candidates.count(form))
            candidates.emplace(std::move(form), canonical_structure(a, canonical_cap));
        return true;
    });
    std::vector<std::pair<CanonicalForm, Structure>> sorted(candidates.begin(), candidates.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        return std::pair(x.second.size(), x.second.fact_count()) < std::pair(y.second.size(), y.second.fact_count());
    });
    std::vector<Structure> out;
    for (auto& [form, a] : sorted) {
        bool minimal = true;
        for (const auto& m : out)
            if (proper_below(m, a)) {
                minimal = false;
                break;
            }
        if (minimal)
            out.push_back(std::move(a));
    }
    return out;
}

/// ∃x_1…∃x_n of the positive diagram of a: one variable per element, one atom
/// per fact. Each quantifier is placed just outside the atoms whose last
/// variable it binds, which keeps evaluation close to a backtracking search.
inline Formula positive_diagram_sentence(const Structure& a) {
    const std::size_t n = a.size();
    auto var = [](int i) { return "x" + std::to_string(i + 1); };
    std::vector<std::vector<Formula>> at(n + 1);
    const auto& vocab = a.vocabulary();
    for (std::size_t s = 0; s < vocab.size(); ++s)
        for (const auto& t : a.relation(s)) {
            std::vector<Term> terms;
            int last = -1;
            for (int x : t) {
                terms.push_back(Term::var(var(x)));
                last = std::max(last, x);
            }
            at[static_cast<std::size_t>(last + 1)].push_back(atom(vocab[s].name, std::move(terms)));
        }
    Formula body = top();
    for (std::size_t i = n; i-- > 0;) {
        std::vector<Formula> parts = at[i + 1];
        if (!body.is(FormulaKind::True))
            parts.push_back(body);
        body = exists(var(static_cast<int>(i)), conj_all(parts));
    }
    if (!at[0].empty())
        body = body.is(FormulaKind::True) ? conj_all(at[0]) : conj(conj_all(at[0]), body);
    return body;
}

/// ⋁ over the models of their existential positive diagrams; ⊥ for none.
inline Formula ep_from_minimal_models(const std::vector<Structure>& models) {
    std::vector<Formula> parts;
    for (const auto& m : models)
        parts.push_back(positive_diagram_sentence(m));
    return disj_all(parts);
}

}  // namespace hompres
