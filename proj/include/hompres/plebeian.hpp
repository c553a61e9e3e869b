#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/formula.hpp"
#include "hompres/graph.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// A non-empty partial map from argument positions of `symbol` to indices of
/// the deleted tuple ā. Both sides are 1-based; entries sorted by position.
struct PositionMap {
    std::string symbol;
    int arity = 0;
    std::vector<std::pair<int, int>> mapping;

    int derived_arity() const { return arity - static_cast<int>(mapping.size()); }
    std::string name() const {
        std::string out = symbol + "@";
        for (std::size_t i = 0; i < mapping.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(mapping[i].first) + ":" + std::to_string(mapping[i].second);
        }
        return out;
    }
};

struct CompanionVocabulary {
    Vocabulary base;
    int k = 0;
    std::vector<PositionMap> derived;
    /// τ′: the base symbols followed by every R_μ.
    Vocabulary vocabulary;
};

/// For each symbol, the maps are listed by counting in base k+1 with the first
/// position least significant (E, k=1: E@1:1, E@2:1, E@1:1,2:1).
inline CompanionVocabulary companion_vocabulary(const Vocabulary& tau, int k) {
    if (k < 0)
        throw DomainError("number of deleted elements must be nonnegative");
    CompanionVocabulary out;
    out.base = tau;
    out.k = k;
    std::vector<Symbol> symbols = tau.symbols();
    for (const auto& s : tau.symbols()) {
        if (s.arity == 0 || k == 0)
            continue;
        std::vector<int> digits(static_cast<std::size_t>(s.arity), 0);
        while (true) {
            std::size_t i = 0;
            while (i < digits.size() && digits[i] == k)
                digits[i++] = 0;
            if (i == digits.size())
                break;
            ++digits[i];
            PositionMap pm{s.name, s.arity, {}};
            for (std::size_t p = 0; p < digits.size(); ++p)
                if (digits[p])
                    pm.mapping.emplace_back(static_cast<int>(p) + 1, digits[p]);
            symbols.push_back(Symbol{pm.name(), pm.derived_arity()});
            out.derived.push_back(std::move(pm));
        }
    }
    out.vocabulary = Vocabulary(std::move(symbols));
    return out;
}

/// p𝔄_ā: ā removed from the universe, base relations restricted to the
/// survivors, and b ∈ R_μ iff reinserting ā along μ gives a tuple of R.
inline Structure companion_structure(const Structure& a, const std::vector<ElementId>& deleted) {
    std::vector<int> del_index;
    std::vector<int> slot(a.size(), 0);  // 1-based index into ā, 0 for survivors
    for (std::size_t i = 0; i < deleted.size(); ++i) {
        int e = a.index_of(deleted[i]).value_or(-1);
        if (e < 0)
            throw UnknownElement(deleted[i]);
        if (slot[static_cast<std::size_t>(e)])
            throw DomainError("deleted tuple repeats element '" + deleted[i] + "'");
        slot[static_cast<std::size_t>(e)] = static_cast<int>(i) + 1;
        del_index.push_back(e);
    }
    auto cv = companion_vocabulary(a.vocabulary(), static_cast<int>(deleted.size()));
    std::vector<int> remap(a.size(), -1);
    std::vector<ElementId> universe;
    for (std::size_t e = 0; e < a.size(); ++e)
        if (!slot[e]) {
            remap[e] = static_cast<int>(universe.size());
            universe.push_back(a.element(static_cast<int>(e)));
        }
    std::vector<std::vector<Tuple>> rels(cv.vocabulary.size());
    const auto& tau = a.vocabulary();
    for (std::size_t s = 0; s < tau.size(); ++s)
        for (const auto& t : a.relation(s)) {
            Tuple b;
            bool keep = true;
            for (int x : t) {
                if (slot[static_cast<std::size_t>(x)]) {
                    keep = false;
                    break;
                }
                b.push_back(remap[static_cast<std::size_t>(x)]);
            }
            if (keep)
                rels[s].push_back(std::move(b));
        }
    for (std::size_t d = 0; d < cv.derived.size(); ++d) {
        const auto& pm = cv.derived[d];
        std::size_t s = tau.index_of(pm.symbol);
        std::vector<int> want(static_cast<std::size_t>(pm.arity), 0);
        for (auto [pos, idx] : pm.mapping)
            want[static_cast<std::size_t>(pos - 1)] = idx;
        for (const auto& t : a.relation(s)) {
            Tuple b;
            bool match = true;
            for (std::size_t p = 0; p < t.size() && match; ++p) {
                int at = slot[static_cast<std::size_t>(t[p])];
                if (at != want[p])
                    match = false;
                else if (!at)
                    b.push_back(remap[static_cast<std::size_t>(t[p])]);
            }
            if (match)
                rels[tau.size() + d].push_back(std::move(b));
        }
    }
    return Structure(cv.vocabulary, std::move(universe), std::move(rels));
}

namespace detail {

inline int constant_slot(const Term& t, int k) {
    if (!t.is_variable()) {
        int i = 0;
        try {
            std::size_t used = 0;
            i = std::stoi(t.name, &used);
            if (used != t.name.size())
                i = 0;
        } catch (const std::exception&) {
            i = 0;
        }
        if (i < 1 || i > k)
            throw DomainError("constant @" + t.name + " does not name a deleted element (expected @1..@" +
                              std::to_string(k) + ")");
        return i;
    }
    return 0;
}

inline Formula translate(const Formula& f, int k, const Vocabulary& tau) {
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
        return f;
    case FormulaKind::Atom: {
        PositionMap pm{f.symbol(), static_cast<int>(f.terms().size()), {}};
        std::vector<Term> rest;
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
            int c = constant_slot(f.terms()[i], k);
            if (c)
                pm.mapping.emplace_back(static_cast<int>(i) + 1, c);
            else
                rest.push_back(f.terms()[i]);
        }
        if (pm.mapping.empty())
            return f;
        if (!tau.find(f.symbol()))
            throw VocabularyMismatch("symbol '" + f.symbol() + "' is not in the vocabulary");
        return atom(pm.name(), std::move(rest));
    }
    case FormulaKind::Equality: {
        int c0 = constant_slot(f.terms()[0], k), c1 = constant_slot(f.terms()[1], k);
        if (!c0 && !c1)
            return f;
        if (c0 && c1)
            return c0 == c1 ? top() : bottom();
        return bottom();
    }
    case FormulaKind::Not:
        return negate(translate(f.body(), k, tau));
    case FormulaKind::And:
        return conj(translate(f.lhs(), k, tau), translate(f.rhs(), k, tau));
    case FormulaKind::Or:
        return disj(translate(f.lhs(), k, tau), translate(f.rhs(), k, tau));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        bool ex = f.is(FormulaKind::Exists);
        std::vector<Formula> parts;
        Formula inner = translate(f.body(), k, tau);
        parts.push_back(ex ? exists(f.variable(), inner) : forall(f.variable(), inner));
        for (int i = 1; i <= k; ++i)
            parts.push_back(translate(substitute(f.body(), f.variable(), Term::constant(std::to_string(i))), k, tau));
        return ex ? disj_all(parts) : conj_all(parts);
    }
    }
    return f;
}

}  // namespace detail

/// φ ↦ φ̂ over τ′. Constants @1..@k stand for a_1..a_k; any other constant is
/// an error. Quantifier rank is preserved exactly.
inline Formula translate_formula(const Formula& phi, int k, const Vocabulary& tau) {
    if (k < 0)
        throw DomainError("number of deleted elements must be nonnegative");
    return detail::translate(phi, k, tau);
}

/// Replaces constants @i by the element ids ā_i so φ can be evaluated in 𝔄.
inline Formula bind_deleted_constants(const Formula& f, const std::vector<ElementId>& deleted) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equality: {
        std::vector<Term> terms = f.terms();
        for (auto& t : terms) {
            int c = detail::constant_slot(t, static_cast<int>(deleted.size()));
            if (c)
                t = Term::constant(deleted[static_cast<std::size_t>(c - 1)]);
        }
        return Formula::make(f.kind(), f.symbol(), std::move(terms));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return Formula::make(f.kind(), f.variable(), {}, {bind_deleted_constants(f.body(), deleted)});
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children())
            kids.push_back(bind_deleted_constants(c, deleted));
        return Formula::make(f.kind(), {}, {}, std::move(kids));
    }
    default:
        return f;
    }
}

struct CompanionReport {
    bool original = false;    // 𝔄 ⊨ φ
    bool companion = false;   // p𝔄_ā ⊨ φ̂
    bool gaifman_isomorphic = false;
    int rank = 0;
    int translated_rank = 0;

    bool agree() const { return original == companion; }
    bool ok() const { return agree() && gaifman_isomorphic && rank == translated_rank; }
};

/// Evaluates both sides of 𝔄 ⊨ φ ⇔ p𝔄_ā ⊨ φ̂ and checks that the identity on
/// survivors is an isomorphism 𝒢(p𝔄_ā) ≅ 𝒢(𝔄)[A ∖ ā].
inline CompanionReport verify_companion(const Structure& a, const std::vector<ElementId>& deleted, const Formula& phi) {
    CompanionReport rep;
    Structure p = companion_structure(a, deleted);
    Formula hat = translate_formula(phi, static_cast<int>(deleted.size()), a.vocabulary());
    rep.original = evaluate(a, bind_deleted_constants(phi, deleted));
    rep.companion = evaluate(p, hat);
    rep.rank = quantifier_rank(phi);
    rep.translated_rank = quantifier_rank(hat);
    Graph ga = gaifman_graph(a);
    std::vector<int> keep;
    for (const auto& e : p.universe())
        keep.push_back(ga.require_index(e));
    rep.gaifman_isomorphic = gaifman_graph(p) == induced_subgraph(ga, keep);
    return rep;
}

}  // namespace hompres
