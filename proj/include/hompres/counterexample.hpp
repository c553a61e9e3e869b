#pragma once

#include <algorithm>
#include <cstddef>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/formula.hpp"
#include "hompres/graph.hpp"
#include "hompres/homomorphism.hpp"
#include "hompres/isomorphism.hpp"
#include "hompres/minimal_models.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// {O/2, S/2, P/1}.
inline Vocabulary order_vocabulary() { return Vocabulary{{"O", 2}, {"S", 2}, {"P", 1}}; }

/// L_n on 1..n: O is <, S is successor, P = {1, n}.
inline Structure make_Ln(int n) {
    if (n < 1)
        throw DomainError("L_n needs n ≥ 1");
    std::vector<std::vector<Tuple>> rels(3);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rels[0].push_back({i, j});
    for (int i = 0; i + 1 < n; ++i)
        rels[1].push_back({i, i + 1});
    rels[2].push_back({0});
    rels[2].push_back({n - 1});
    return Structure(order_vocabulary(), detail::numbered_universe(static_cast<std::size_t>(n)), std::move(rels));
}

struct SComponent {
    Structure part;  // a substructure of L_m, keeping L_m's element ids
    int m = 1;
};

struct SClassMember {
    std::vector<SComponent> components;

    Structure structure() const {
        std::vector<Structure> parts;
        for (const auto& c : components)
            parts.push_back(c.part);
        return disjoint_union(std::span<const Structure>(parts), order_vocabulary());
    }

    bool valid() const {
        for (const auto& c : components)
            if (c.m < 1 || !is_substructure(c.part, make_Ln(c.m)))
                return false;
        return true;
    }
};

/// Probability of dropping each element / each surviving tuple of a
/// component. A negative value draws one per component from {0, .1, .25, .5}.
struct SampleOptions {
    double element_drop = -1;
    double tuple_drop = -1;
};

/// Deterministic pseudo-random member of S: 1..max_components components,
/// each a random substructure of L_m with m uniform in 1..max_n.
inline SClassMember sample_S(std::uint64_t seed, int max_n, int max_components, SampleOptions opts = {}) {
    if (max_n < 1 || max_components < 1)
        throw DomainError("sampling S needs max_n ≥ 1 and max_components ≥ 1");
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const double levels[] = {0.0, 0.1, 0.25, 0.5};
    auto pick = [&](double p) { return p >= 0 ? p : levels[uniform(0, 3)]; };
    SClassMember out;
    int count = uniform(1, max_components);
    for (int c = 0; c < count; ++c) {
        int m = uniform(1, max_n);
        Structure l = make_Ln(m);
        std::bernoulli_distribution drop_element(pick(opts.element_drop));
        std::bernoulli_distribution drop_tuple(pick(opts.tuple_drop));
        std::vector<int> kept;
        for (int e = 0; e < m; ++e)
            if (!drop_element(rng))
                kept.push_back(e);
        std::vector<int> remap(static_cast<std::size_t>(m), -1);
        std::vector<ElementId> universe;
        for (int e : kept) {
            remap[static_cast<std::size_t>(e)] = static_cast<int>(universe.size());
            universe.push_back(l.element(e));
        }
        std::vector<std::vector<Tuple>> rels(3);
        for (const auto& [s, t] : l.facts()) {
            Tuple u;
            for (int x : t)
                u.push_back(remap[static_cast<std::size_t>(x)]);
            if (std::find(u.begin(), u.end(), -1) != u.end())
                continue;
            if (!drop_tuple(rng))
                rels[s].push_back(std::move(u));
        }
        out.components.push_back({Structure(order_vocabulary(), std::move(universe), std::move(rels)), m});
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<int>> gaifman_components(const Structure& a) {
    Graph g = gaifman_graph(a);
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (seen[v])
            continue;
        auto d = bfs_distances(g, static_cast<int>(v));
        std::vector<int> comp;
        for (std::size_t u = 0; u < g.size(); ++u)
            if (d[u] != kUnreachable) {
                seen[u] = true;
                comp.push_back(static_cast<int>(u));
            }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace detail

/// Membership in S: every Gaifman component of a embeds into L_c, c its size.
/// A component that embeds into some L_m also embeds into L_c by ranking.
inline bool in_class_S(const Structure& a) {
    if (!(a.vocabulary() == order_vocabulary()))
        return false;
    for (const auto& comp : detail::gaifman_components(a)) {
        Structure part = induced_substructure(a, comp);
        if (!embeds_into(part, make_Ln(static_cast<int>(part.size()))))
            return false;
    }
    return true;
}

namespace detail {

inline void integer_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        integer_partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Class S with components drawn from L_c, c ≤ max_component. Each member of
/// size n is isomorphic to a full-universe fact subset of L_{c_1} ⊕ … ⊕ L_{c_j}
/// with its component sizes c_i summing to n; only subsets whose parts are
/// Gaifman-connected are generated, which skips the obvious repeats.
inline ClassSpec class_S(std::size_t bound, int max_component = -1) {
    ClassSpec c;
    c.name = "S";
    c.vocabulary = order_vocabulary();
    c.size_bound = bound;
    c.member = in_class_S;
    c.generate = [max_component](std::size_t limit, const StructureVisitor& visit) {
        for (int n = 0; n <= static_cast<int>(limit); ++n) {
            std::vector<std::vector<int>> parts;
            std::vector<int> cur;
            int cap = max_component < 0 ? n : std::min(n, max_component);
            detail::integer_partitions(n, cap, cur, parts);
            for (const auto& sizes : parts) {
                std::vector<Structure> ls;
                for (int s : sizes)
                    ls.push_back(make_Ln(s));
                Structure full = disjoint_union(std::span<const Structure>(ls), order_vocabulary());
                const auto facts = full.facts();
                std::vector<int> part_of(full.size());
                std::vector<std::uint64_t> part_mask;
                int offset = 0;
                for (std::size_t p = 0; p < sizes.size(); ++p) {
                    std::uint64_t m = 0;
                    for (int i = 0; i < sizes[p]; ++i) {
                        part_of[static_cast<std::size_t>(offset + i)] = static_cast<int>(p);
                        m |= std::uint64_t{1} << (offset + i);
                    }
                    part_mask.push_back(m);
                    offset += sizes[p];
                }
                auto connected = [&](std::uint64_t mask) {
                    std::vector<std::uint64_t> adj(full.size(), 0);
                    for (std::size_t f = 0; f < facts.size(); ++f)
                        if ((mask >> f & 1) && facts[f].second.size() == 2) {
                            int x = facts[f].second[0], y = facts[f].second[1];
                            adj[static_cast<std::size_t>(x)] |= std::uint64_t{1} << y;
                            adj[static_cast<std::size_t>(y)] |= std::uint64_t{1} << x;
                        }
                    for (auto pm : part_mask) {
                        std::uint64_t reach = pm & -pm, prev = 0;
                        while (reach != prev) {
                            prev = reach;
                            for (std::uint64_t b = reach; b; b &= b - 1)
                                reach |= adj[static_cast<std::size_t>(std::countr_zero(b))];
                        }
                        if (reach != pm)
                            return false;
                    }
                    return true;
                };
                if (!detail::for_each_fact_subset(full, connected, visit))
                    return;
            }
        }
    };
    return c;
}

/// β, λ, ν and the order sentences over {O, S, P}, with x ≤ y read as
/// O(x,y) ∨ x = y.
struct FormulaLibrary {
    Formula beta;        // β(x, y, z)
    Formula lambda;      // λ(x, y)
    Formula nu;          // ν(z1, z2): O-neighbours with nothing O-between them anywhere
    Formula nu_between;  // (x, y, z1, z2): same, with the in-between w restricted to β(x, y, w)
    /// ∃x∃y (P(x) ∧ P(y) ∧ λ(x,y) ∧ ∀z1∀z2 (β(x,y,z1) ∧ β(x,y,z2) ∧ ν′ → S(z1,z2)))
    /// with ν′ = nu_between: successive elements of the interval's own order.
    Formula phi_order;
    /// The same sentence with the unrestricted ν. An element outside [x, y]
    /// can then hide a gap, so it holds on some members of S without a
    /// complete order (see order_sentence_gap_example).
    Formula phi_displayed;
};

namespace detail {

inline Formula leq(const std::string& a, const std::string& b) {
    return disj(atom_vars("O", {a, b}), equals(Term::var(a), Term::var(b)));
}

inline Formula beta_of(const std::string& x, const std::string& y, const std::string& z) {
    return conj(leq(x, z), leq(z, y));
}

inline Formula order_sentence(const Formula& lambda, const Formula& successive) {
    Formula successors = forall_all(
        {"z1", "z2"}, implies(conj_all({beta_of("x", "y", "z1"), beta_of("x", "y", "z2"), successive}),
                              atom_vars("S", {"z1", "z2"})));
    return exists_all({"x", "y"},
                      conj_all({atom_vars("P", {"x"}), atom_vars("P", {"y"}), lambda, successors}));
}

}  // namespace detail

inline FormulaLibrary formula_library() {
    using detail::beta_of;
    using detail::leq;
    FormulaLibrary lib;
    lib.beta = beta_of("x", "y", "z");
    lib.lambda = conj(atom_vars("O", {"x", "y"}),
                      forall_all({"z1", "z2"}, implies(conj(beta_of("x", "y", "z1"), beta_of("x", "y", "z2")),
                                                       disj(leq("z1", "z2"), leq("z2", "z1")))));
    Formula gap = negate(conj(atom_vars("O", {"z1", "w"}), atom_vars("O", {"w", "z2"})));
    lib.nu = conj(atom_vars("O", {"z1", "z2"}), forall("w", gap));
    lib.nu_between = conj(atom_vars("O", {"z1", "z2"}), forall("w", implies(beta_of("x", "y", "w"), gap)));
    lib.phi_order = detail::order_sentence(lib.lambda, lib.nu_between);
    lib.phi_displayed = detail::order_sentence(lib.lambda, lib.nu);
    return lib;
}

/// A substructure of L_4 without a complete order on which phi_displayed
/// holds: 3 is outside [1, 4] (O(1,3) dropped) yet sits O-between 2 and 4.
inline Structure order_sentence_gap_example() {
    return StructureBuilder(order_vocabulary())
        .elements({"1", "2", "3", "4"})
        .fact("O", {"1", "2"})
        .fact("O", {"1", "4"})
        .fact("O", {"2", "3"})
        .fact("O", {"2", "4"})
        .fact("O", {"3", "4"})
        .fact("S", {"1", "2"})
        .fact("P", {"1"})
        .fact("P", {"4"})
        .build();
}

/// An embedding of some L_n, n ≥ 2, into a, listed from 1 to n: a P-element
/// followed by an S-path, each new element O-above all earlier ones, ending at
/// a P-element.
inline std::optional<std::vector<ElementId>> find_complete_order(const Structure& a) {
    if (!(a.vocabulary() == order_vocabulary()))
        throw VocabularyMismatch("complete orders live over {O/2, S/2, P/1}");
    const std::size_t n = a.size();
    std::vector<bool> p(n, false);
    for (const auto& t : a.relation(2))
        p[static_cast<std::size_t>(t[0])] = true;
    std::vector<int> path;
    std::vector<bool> used(n, false);
    auto extend = [&](auto& self) -> bool {
        int last = path.back();
        for (const auto& t : a.relation(1)) {
            if (t[0] != last || used[static_cast<std::size_t>(t[1])])
                continue;
            int y = t[1];
            bool above = true;
            for (int x : path)
                if (!a.holds(0, Tuple{x, y})) {
                    above = false;
                    break;
                }
            if (!above)
                continue;
            path.push_back(y);
            used[static_cast<std::size_t>(y)] = true;
            if (p[static_cast<std::size_t>(y)] || self(self))
                return true;
            used[static_cast<std::size_t>(y)] = false;
            path.pop_back();
        }
        return false;
    };
    for (std::size_t x = 0; x < n; ++x) {
        if (!p[x])
            continue;
        path = {static_cast<int>(x)};
        used.assign(n, false);
        used[x] = true;
        if (extend(extend)) {
            std::vector<ElementId> out;
            for (int v : path)
                out.push_back(a.element(v));
            return out;
        }
    }
    return std::nullopt;
}

inline bool contains_complete_order(const Structure& a) { return find_complete_order(a).has_value(); }
inline bool contains_complete_order(const SClassMember& a) {
    for (const auto& c : a.components)
        if (contains_complete_order(c.part))
            return true;
    return false;
}

namespace detail {

/// Every map [n] → [m] that is a homomorphism L_n → L_m, as image indices.
inline std::vector<std::vector<int>> homs_between_lines(int n, int m) {
    Structure ln = make_Ln(n), lm = make_Ln(m);
    std::vector<std::vector<int>> out;
    std::vector<int> h(static_cast<std::size_t>(n), 0);
    while (true) {
        bool ok = true;
        for (std::size_t s = 0; s < 3 && ok; ++s)
            for (const auto& t : ln.relation(s)) {
                Tuple u;
                for (int x : t)
                    u.push_back(h[static_cast<std::size_t>(x)]);
                if (!lm.holds(s, u)) {
                    ok = false;
                    break;
                }
            }
        if (ok)
            out.push_back(h);
        std::size_t i = 0;
        while (i < h.size() && h[i] == m - 1)
            h[i++] = 0;
        if (i == h.size())
            break;
        ++h[i];
    }
    return out;
}

}  // namespace detail

struct LemmaCheck {
    std::string name;
    std::size_t checked = 0;
    std::size_t violations = 0;
    std::vector<std::string> examples;  // first few violations, human-readable

    bool ok() const { return violations == 0; }
};

/// For n in 2..n_max and every substructure A ⊆ L_m, m ≤ m_max (L_m included),
/// a homomorphism L_n → A forces L_n ≅ A ≅ L_m. Direct enumeration.
inline LemmaCheck single_order_sweep(int n_max, int m_max) {
    LemmaCheck c{"single-order (direct)", 0, 0, {}};
    for (int m = 1; m <= m_max; ++m) {
        Structure lm = make_Ln(m);
        auto check = [&](const Structure& a) {
            for (int n = 2; n <= n_max; ++n) {
                ++c.checked;
                Structure ln = make_Ln(n);
                if (hom_exists(ln, a) && !(is_isomorphic(a, ln) && is_isomorphic(a, lm))) {
                    ++c.violations;
                    if (c.examples.size() < 5)
                        c.examples.push_back("L_" + std::to_string(n) + " -> substructure of L_" + std::to_string(m));
                }
            }
            return true;
        };
        check(lm);
        for_each_proper_substructure(lm, check);
    }
    return c;
}

/// Same statement for n, m ≤ bound through the homomorphisms h: L_n → L_m:
/// the substructures of L_m admitting h are exactly those containing the
/// image of h, so the statement holds iff every such image is all of L_m
/// and n = m.
inline LemmaCheck single_order_by_images(int bound) {
    LemmaCheck c{"single-order", 0, 0, {}};
    for (int n = 2; n <= bound; ++n)
        for (int m = 1; m <= bound; ++m) {
            Structure ln = make_Ln(n), lm = make_Ln(m);
            for (const auto& h : detail::homs_between_lines(n, m)) {
                ++c.checked;
                std::vector<bool> hit(static_cast<std::size_t>(m), false);
                for (int x : h)
                    hit[static_cast<std::size_t>(x)] = true;
                std::size_t image_facts = 0;
                std::vector<std::pair<std::size_t, Tuple>> seen;
                for (const auto& [s, t] : ln.facts()) {
                    Tuple u;
                    for (int x : t)
                        u.push_back(h[static_cast<std::size_t>(x)]);
                    seen.emplace_back(s, std::move(u));
                }
                std::sort(seen.begin(), seen.end());
                image_facts = static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
                bool full = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }) &&
                            image_facts == lm.fact_count();
                if (!full || n != m) {
                    ++c.violations;
                    if (c.examples.size() < 5)
                        c.examples.push_back("L_" + std::to_string(n) + " -> L_" + std::to_string(m));
                }
            }
        }
    return c;
}

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    std::vector<Structure> minimal_models;  // the L_n confirmed minimal

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.ok(); });
    }
};

/// Runs the order-class checks on `sample_size` members of S drawn from
/// seeds derived from `seed`, with line lengths up to n_bound.
inline LemmaReport check_lemmas(std::size_t sample_size, std::uint64_t seed, int n_bound) {
    if (n_bound < 2)
        throw DomainError("n_bound must be at least 2");
    LemmaReport rep;
    FormulaLibrary lib = formula_library();
    rep.checks.push_back(single_order_by_images(n_bound));
    rep.checks.push_back(single_order_sweep(n_bound, std::min(n_bound, 4)));

    std::vector<Structure> sample;
    std::vector<char> order;
    std::seed_seq seq{seed};
    std::vector<std::uint64_t> seeds(sample_size);
    {
        std::vector<std::uint32_t> raw(2 * sample_size);
        seq.generate(raw.begin(), raw.end());
        for (std::size_t i = 0; i < sample_size; ++i)
            seeds[i] = (std::uint64_t{raw[2 * i]} << 32) | raw[2 * i + 1];
    }
    for (auto s : seeds) {
        SClassMember member = sample_S(s, n_bound, 3);
        sample.push_back(member.structure());
        order.push_back(contains_complete_order(member));
    }

    LemmaCheck transfer{"order-transfer", 0, 0, {}};
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!order[i])
            continue;
        for (std::size_t j = 0; j < sample.size(); ++j) {
            if (i == j || order[j])
                continue;
            ++transfer.checked;
            if (hom_exists(sample[i], sample[j])) {
                ++transfer.violations;
                if (transfer.examples.size() < 5)
                    transfer.examples.push_back("sample " + std::to_string(i) + " -> " + std::to_string(j));
            }
        }
    }
    rep.checks.push_back(std::move(transfer));

    LemmaCheck defines{"defines-order", 0, 0, {}};
    CompiledFormula phi(lib.phi_order, order_vocabulary());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        ++defines.checked;
        bool semantic = contains_complete_order(sample[i]);
        if (phi.evaluate(sample[i]) != semantic || semantic != static_cast<bool>(order[i])) {
            ++defines.violations;
            if (defines.examples.size() < 5)
                defines.examples.push_back("sample " + std::to_string(i));
        }
    }
    rep.checks.push_back(std::move(defines));

    LemmaCheck preserved{"preservation", sample.size(), 0, {}};
    for (auto [i, j] : check_preservation(lib.phi_order, sample)) {
        ++preserved.violations;
        if (preserved.examples.size() < 5)
            preserved.examples.push_back("sample " + std::to_string(i) + " -> " + std::to_string(j));
    }
    rep.checks.push_back(std::move(preserved));

    LemmaCheck minimal{"minimal-orders", 0, 0, {}};
    ClassSpec s = class_S(static_cast<std::size_t>(n_bound));
    for (int n = 2; n <= n_bound; ++n) {
        ++minimal.checked;
        Structure ln = make_Ln(n);
        if (is_minimal_model(ln, lib.phi_order, s))
            rep.minimal_models.push_back(ln);
        else {
            ++minimal.violations;
            minimal.examples.push_back("L_" + std::to_string(n) + " is not minimal");
        }
    }
    rep.checks.push_back(std::move(minimal));
    return rep;
}

/// Looks for a member of S on which the existential positive sentence ψ and
/// φ_order disagree: first L_1..L_{n_bound}, then the proper substructures of
/// each L_n in turn.
inline std::optional<Structure> refute_ep_candidate(const Formula& psi, int n_bound,
                                                    std::size_t budget = kGeneratorLimit) {
    if (!is_existential_positive(psi))
        throw DomainError("candidate is not existential positive");
    if (!free_variables(psi).empty())
        throw DomainError("candidate must be a sentence");
    CompiledFormula phi(formula_library().phi_order, order_vocabulary());
    CompiledFormula cand(psi, order_vocabulary());
    for (int n = 1; n <= n_bound; ++n) {
        Structure ln = make_Ln(n);
        if (phi.evaluate(ln) != cand.evaluate(ln))
            return ln;
    }
    std::optional<Structure> found;
    for (int n = 2; n <= n_bound && !found; ++n)
        for_each_proper_substructure(
            make_Ln(n),
            [&](const Structure& a) {
                if (phi.evaluate(a) != cand.evaluate(a)) {
                    found = a;
                    return false;
                }
                return true;
            },
            budget);
    return found;
}

}  // namespace hompres
