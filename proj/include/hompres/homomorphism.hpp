#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/formula.hpp"
#include "hompres/graph.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Total map from the universe of the source to that of the target, by id.
using HomCertificate = std::map<ElementId, ElementId>;

/// True iff `h` is total on a, lands in b and preserves every relation.
/// A true 0-ary symbol of a must be true in b.
inline bool is_hom(const Structure& a, const Structure& b, const HomCertificate& h) {
    detail::require_same_vocabulary(a, b);
    std::vector<int> img(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto it = h.find(a.element(static_cast<int>(i)));
        if (it == h.end())
            return false;
        auto j = b.index_of(it->second);
        if (!j)
            return false;
        img[i] = *j;
    }
    Tuple u;
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        for (const auto& t : a.relation(s)) {
            u.clear();
            for (int x : t)
                u.push_back(img[static_cast<std::size_t>(x)]);
            if (!b.holds(s, u))
                return false;
        }
    return true;
}

enum class SearchStatus { Found, None, Unknown };

struct HomSearchResult {
    SearchStatus status = SearchStatus::None;
    std::optional<HomCertificate> map;
    /// Index form of `map`: image index for each element index of the source.
    std::vector<int> images;
    std::size_t nodes = 0;
};

namespace detail {

/// Backtracking over a's elements in decreasing Gaifman degree (ties by id),
/// keeping every tuple constraint generalized-arc-consistent.
class HomSearch {
public:
    HomSearch(const Structure& a, const Structure& b, std::size_t budget)
        : a_(a), b_(b), budget_(budget), words_((b.size() + 63) / 64) {
        const auto n = a.size();
        var_constraints_.resize(n);
        std::vector<std::vector<int>> nbrs(n);
        for (std::size_t s = 0; s < a.vocabulary().size(); ++s) {
            if (a.vocabulary()[s].arity == 0)
                continue;
            for (const auto& t : a.relation(s)) {
                const int id = static_cast<int>(constraints_.size());
                constraints_.push_back({s, vars_.size(), t.size()});
                for (std::size_t p = 0; p < t.size(); ++p) {
                    int first = -1;
                    for (std::size_t q = 0; q < p; ++q)
                        if (t[q] == t[p]) {
                            first = static_cast<int>(q);
                            break;
                        }
                    vars_.push_back(t[p]);
                    first_.push_back(first);
                    if (first < 0)
                        var_constraints_[static_cast<std::size_t>(t[p])].push_back(id);
                    for (int y : t)
                        if (y != t[p])
                            nbrs[static_cast<std::size_t>(t[p])].push_back(y);
                }
            }
        }
        std::vector<std::size_t> degree(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto& v = nbrs[i];
            std::sort(v.begin(), v.end());
            degree[i] = static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
        }
        order_.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            order_[i] = static_cast<int>(i);
        std::sort(order_.begin(), order_.end(), [&](int x, int y) {
            auto dx = degree[static_cast<std::size_t>(x)], dy = degree[static_cast<std::size_t>(y)];
            if (dx != dy)
                return dx > dy;
            return a.element(x) < a.element(y);
        });
        queued_.assign(constraints_.size(), 0);
    }

    /// With `want_map` false only the status and index images are filled in.
    HomSearchResult run(bool want_map = true) {
        HomSearchResult out;
        for (std::size_t s = 0; s < a_.vocabulary().size(); ++s)
            if (a_.vocabulary()[s].arity == 0 && a_.truth(s) && !b_.truth(s))
                return out;
        if (a_.size() == 0) {
            out.status = SearchStatus::Found;
            if (want_map)
                out.map = HomCertificate{};
            return out;
        }
        if (b_.size() == 0)
            return out;
        const std::size_t stride = a_.size() * words_;
        doms_.assign((a_.size() + 1) * stride, 0);
        for (std::size_t x = 0; x < a_.size(); ++x)
            for (std::size_t v = 0; v < b_.size(); ++v)
                doms_[x * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
        queue_.clear();
        for (std::size_t c = 0; c < constraints_.size(); ++c) {
            queue_.push_back(static_cast<int>(c));
            queued_[c] = 1;
        }
        try {
            if (propagate(doms_.data()) && search(0)) {
                out.status = SearchStatus::Found;
                out.images = images_;
                if (want_map) {
                    HomCertificate h;
                    for (std::size_t x = 0; x < a_.size(); ++x)
                        h.emplace(a_.element(static_cast<int>(x)), b_.element(images_[x]));
                    out.map = std::move(h);
                }
            }
        } catch (const Abort&) {
            out.status = SearchStatus::Unknown;
        }
        out.nodes = nodes_;
        return out;
    }

private:
    struct Constraint {
        std::size_t symbol;
        std::size_t offset;  // into vars_ / first_
        std::size_t arity;
    };
    struct Abort {};

    bool has(const std::uint64_t* dom, int x, int v) const {
        return (dom[static_cast<std::size_t>(x) * words_ + static_cast<std::size_t>(v) / 64] >> (v % 64)) & 1U;
    }

    /// Runs the constraints in queue_ to a fixpoint on `dom`.
    bool propagate(std::uint64_t* dom) {
        bool ok = true;
        while (!queue_.empty()) {
            const int cid = queue_.back();
            queue_.pop_back();
            queued_[static_cast<std::size_t>(cid)] = 0;
            if (!ok)
                continue;
            const Constraint& c = constraints_[static_cast<std::size_t>(cid)];
            const int* vars = vars_.data() + c.offset;
            const int* first = first_.data() + c.offset;
            const std::size_t k = c.arity;
            support_.assign(k * words_, 0);
            for (const auto& u : b_.relation(c.symbol)) {
                bool fits = true;
                for (std::size_t p = 0; p < k && fits; ++p)
                    fits = first[p] < 0 ? has(dom, vars[p], u[p]) : u[p] == u[static_cast<std::size_t>(first[p])];
                if (!fits)
                    continue;
                for (std::size_t p = 0; p < k; ++p)
                    support_[p * words_ + static_cast<std::size_t>(u[p]) / 64] |= std::uint64_t{1} << (u[p] % 64);
            }
            for (std::size_t p = 0; p < k && ok; ++p) {
                if (first[p] >= 0)
                    continue;
                const auto x = static_cast<std::size_t>(vars[p]);
                bool changed = false, empty = true;
                for (std::size_t w = 0; w < words_; ++w) {
                    std::uint64_t next = dom[x * words_ + w] & support_[p * words_ + w];
                    changed |= next != dom[x * words_ + w];
                    empty &= next == 0;
                    dom[x * words_ + w] = next;
                }
                if (empty)
                    ok = false;
                else if (changed)
                    for (int other : var_constraints_[x])
                        if (other != cid && !queued_[static_cast<std::size_t>(other)]) {
                            queued_[static_cast<std::size_t>(other)] = 1;
                            queue_.push_back(other);
                        }
            }
        }
        return ok;
    }

    /// Level `level` works on the domain slice doms_[level], writing the
    /// next level's copy into doms_[level + 1].
    bool search(std::size_t level) {
        const std::size_t stride = a_.size() * words_;
        const std::uint64_t* dom = doms_.data() + level * stride;
        if (level == order_.size()) {
            images_.assign(a_.size(), -1);
            for (std::size_t x = 0; x < a_.size(); ++x)
                for (std::size_t v = 0; v < b_.size(); ++v)
                    if (has(dom, static_cast<int>(x), static_cast<int>(v))) {
                        images_[x] = static_cast<int>(v);
                        break;
                    }
            return true;
        }
        const int x = order_[level];
        std::uint64_t* next = doms_.data() + (level + 1) * stride;
        for (std::size_t v = 0; v < b_.size(); ++v) {
            if (!has(dom, x, static_cast<int>(v)))
                continue;
            if (budget_ && nodes_ >= budget_)
                throw Abort{};
            ++nodes_;
            std::copy(dom, dom + stride, next);
            for (std::size_t w = 0; w < words_; ++w)
                next[static_cast<std::size_t>(x) * words_ + w] = 0;
            next[static_cast<std::size_t>(x) * words_ + v / 64] = std::uint64_t{1} << (v % 64);
            for (int c : var_constraints_[static_cast<std::size_t>(x)]) {
                queued_[static_cast<std::size_t>(c)] = 1;
                queue_.push_back(c);
            }
            if (propagate(next) && search(level + 1))
                return true;
        }
        return false;
    }

    const Structure& a_;
    const Structure& b_;
    std::size_t budget_;
    std::size_t words_;
    std::vector<Constraint> constraints_;
    std::vector<int> vars_, first_;
    std::vector<std::vector<int>> var_constraints_;
    std::vector<int> order_;
    std::vector<int> images_;
    std::vector<std::uint64_t> doms_, support_;
    std::vector<int> queue_;
    std::vector<char> queued_;
    std::size_t nodes_ = 0;
};

}  // namespace detail

/// Complete search; a positive `budget` caps the number of search nodes and
/// turns an unfinished search into SearchStatus::Unknown.
inline HomSearchResult search_homomorphism(const Structure& a, const Structure& b, std::size_t budget = 0) {
    detail::require_same_vocabulary(a, b);
    return detail::HomSearch(a, b, budget).run();
}

inline std::optional<HomCertificate> find_homomorphism(const Structure& a, const Structure& b) {
    return search_homomorphism(a, b).map;
}

inline bool hom_exists(const Structure& a, const Structure& b) {
    detail::require_same_vocabulary(a, b);
    return detail::HomSearch(a, b, 0).run(false).status == SearchStatus::Found;
}

inline bool homomorphically_equivalent(const Structure& a, const Structure& b) {
    return hom_exists(a, b) && hom_exists(b, a);
}

/// g ∘ f.
inline HomCertificate compose(const HomCertificate& f, const HomCertificate& g) {
    HomCertificate out;
    for (const auto& [x, y] : f)
        out.emplace(x, g.at(y));
    return out;
}

/// Identity on the ids of `b`, viewed as a map into a superstructure.
inline HomCertificate inclusion_map(const Structure& b) {
    HomCertificate out;
    for (const auto& e : b.universe())
        out.emplace(e, e);
    return out;
}

/// Ordered pairs (i, j), i ≠ j, of sample indices with sample[i] ⊨ φ, a
/// homomorphism sample[i] → sample[j], and sample[j] ⊭ φ.
inline std::vector<std::pair<std::size_t, std::size_t>> check_preservation(const Formula& phi,
                                                                           const std::vector<Structure>& sample) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (sample.empty())
        return out;
    CompiledFormula compiled(phi, sample.front().vocabulary());
    std::vector<char> holds;
    for (const auto& s : sample)
        holds.push_back(compiled.evaluate(s));
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!holds[i])
            continue;
        for (std::size_t j = 0; j < sample.size(); ++j)
            if (i != j && !holds[j] && hom_exists(sample[i], sample[j]))
                out.emplace_back(i, j);
    }
    return out;
}

}  // namespace hompres
