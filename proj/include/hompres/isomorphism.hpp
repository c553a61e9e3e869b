#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Isomorphism-invariant encoding: element count plus relations over 0..n−1.
struct CanonicalForm {
    std::size_t size = 0;
    std::vector<std::vector<Tuple>> relations;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr std::size_t kDefaultCanonicalCap = 8;

namespace detail {

/// Colour refinement; colours are ranks of sorted signatures, so the final
/// colouring (and its order) is invariant under isomorphism.
inline std::vector<int> refined_colours(const Structure& a) {
    const std::size_t n = a.size();
    std::vector<int> colour(n, 0);
    std::size_t classes = n == 0 ? 0 : 1;
    for (;;) {
        using Signature = std::pair<int, std::vector<std::tuple<std::size_t, std::size_t, std::vector<int>>>>;
        std::vector<Signature> sig(n);
        for (std::size_t i = 0; i < n; ++i)
            sig[i].first = colour[i];
        for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
            for (const auto& t : a.relation(s)) {
                std::vector<int> cs;
                for (int x : t)
                    cs.push_back(colour[static_cast<std::size_t>(x)]);
                for (std::size_t p = 0; p < t.size(); ++p)
                    sig[static_cast<std::size_t>(t[p])].second.emplace_back(s, p, cs);
            }
        for (auto& s : sig)
            std::sort(s.second.begin(), s.second.end());
        std::vector<Signature> distinct = sig;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < n; ++i)
            colour[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[i]) - distinct.begin());
        if (distinct.size() == classes)
            return colour;
        classes = distinct.size();
    }
}

}  // namespace detail

/// Least relabelled encoding over all orderings that list colour classes in
/// colour order. Brute force; refuses structures above `cap` elements.
inline CanonicalForm canonical_form(const Structure& a, std::size_t cap = kDefaultCanonicalCap) {
    const std::size_t n = a.size();
    if (n > cap)
        throw SearchLimitExceeded("canonical form refuses structures with more than " + std::to_string(cap) +
                                  " elements");
    auto colour = detail::refined_colours(a);
    std::vector<int> seq(n);
    for (std::size_t i = 0; i < n; ++i)
        seq[i] = static_cast<int>(i);
    std::sort(seq.begin(), seq.end(), [&](int x, int y) {
        return std::pair(colour[static_cast<std::size_t>(x)], x) < std::pair(colour[static_cast<std::size_t>(y)], y);
    });
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && colour[static_cast<std::size_t>(seq[j])] == colour[static_cast<std::size_t>(seq[i])])
            ++j;
        blocks.emplace_back(i, j);
        i = j;
    }

    CanonicalForm best;
    bool have = false;
    std::vector<int> pos(n);
    CanonicalForm cur;
    cur.size = n;
    cur.relations.resize(a.vocabulary().size());
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            pos[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);
        for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
            auto& rel = cur.relations[s];
            rel = a.relation(s);
            for (auto& t : rel)
                for (auto& x : t)
                    x = pos[static_cast<std::size_t>(x)];
            std::sort(rel.begin(), rel.end());
        }
        if (!have || cur < best) {
            best = cur;
            have = true;
        }
        // Advance the odometer of per-block permutations.
        std::size_t b = 0;
        for (; b < blocks.size(); ++b) {
            auto first = seq.begin() + static_cast<std::ptrdiff_t>(blocks[b].first);
            auto last = seq.begin() + static_cast<std::ptrdiff_t>(blocks[b].second);
            if (std::next_permutation(first, last))
                break;
        }
        if (b == blocks.size())
            break;
    }
    best.size = n;
    return best;
}

/// The canonical representative with elements named "1".."n".
inline Structure canonical_structure(const Structure& a, std::size_t cap = kDefaultCanonicalCap) {
    auto form = canonical_form(a, cap);
    std::vector<ElementId> names;
    for (std::size_t i = 1; i <= form.size; ++i)
        names.push_back(std::to_string(i));
    return Structure(a.vocabulary(), std::move(names), std::move(form.relations));
}

inline bool is_isomorphic(const Structure& a, const Structure& b, std::size_t cap = kDefaultCanonicalCap) {
    if (!(a.vocabulary() == b.vocabulary()) || a.size() != b.size() || a.fact_count() != b.fact_count())
        return false;
    return canonical_form(a, cap) == canonical_form(b, cap);
}

}  // namespace hompres
