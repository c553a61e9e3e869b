#pragma once

#include <set>
#include <string>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/formula.hpp"
#include "hompres/structure.hpp"

namespace hompres {

namespace detail {

/// Picks `count` names based on `base` that are not in `avoid`, and adds them to it.
inline std::vector<std::string> fresh_names(const std::string& base, std::size_t count, std::set<std::string>& avoid) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(fresh_variable(base, avoid));
        avoid.insert(out.back());
    }
    return out;
}

inline Formula adjacency_with(const Vocabulary& vocab, const std::string& x, const std::string& y,
                              const std::vector<std::string>& spare) {
    std::vector<Formula> cases;
    for (const auto& s : vocab.symbols()) {
        if (s.arity < 2)
            continue;
        for (int i = 0; i < s.arity; ++i)
            for (int j = 0; j < s.arity; ++j) {
                if (i == j)
                    continue;
                std::vector<std::string> args(static_cast<std::size_t>(s.arity));
                std::vector<std::string> bound;
                for (int p = 0; p < s.arity; ++p) {
                    if (p == i)
                        args[static_cast<std::size_t>(p)] = x;
                    else if (p == j)
                        args[static_cast<std::size_t>(p)] = y;
                    else {
                        bound.push_back(spare[bound.size()]);
                        args[static_cast<std::size_t>(p)] = bound.back();
                    }
                }
                cases.push_back(exists_all(bound, atom_vars(s.name, args)));
            }
    }
    return disj_all(cases);
}

inline Formula dist_chain(const Vocabulary& vocab, int r, const std::string& x, const std::string& y,
                          const std::vector<std::string>& chain, const std::vector<std::string>& spare) {
    if (r == 0)
        return equals(x, y);
    const std::string& z = chain[static_cast<std::size_t>(r - 1)];
    return disj(dist_chain(vocab, r - 1, x, y, chain, spare),
                exists(z, conj(adjacency_with(vocab, x, z, spare), dist_chain(vocab, r - 1, z, y, chain, spare))));
}

}  // namespace detail

/// Gaifman adjacency: x and y occur together in some tuple. Positions other
/// than those of x and y are existentially quantified, so the rank is
/// max(0, maxarity − 2). Bound names avoid x, y and `avoid`.
inline Formula adjacency_formula(const Vocabulary& vocab, const std::string& x = "x", const std::string& y = "y",
                                 std::set<std::string> avoid = {}) {
    avoid.insert(x);
    avoid.insert(y);
    auto spare = detail::fresh_names("w", static_cast<std::size_t>(std::max(0, vocab.max_arity() - 2)), avoid);
    return detail::adjacency_with(vocab, x, y, spare);
}

/// δ(x,y) ≤ r by the chain δ≤0 := x=y,
/// δ≤r := δ≤(r−1)(x,y) ∨ ∃z (adj(x,z) ∧ δ≤(r−1)(z,y)).
/// Quantifier rank is r for arity ≤ 2 and r + maxarity − 2 above that.
inline Formula dist_formula(const Vocabulary& vocab, int r, const std::string& x = "x", const std::string& y = "y",
                            std::set<std::string> avoid = {}) {
    if (r < 0)
        throw DomainError("distance bound must be nonnegative");
    avoid.insert(x);
    avoid.insert(y);
    auto chain = detail::fresh_names("z", static_cast<std::size_t>(r), avoid);
    auto spare = detail::fresh_names("w", static_cast<std::size_t>(std::max(0, vocab.max_arity() - 2)), avoid);
    return detail::dist_chain(vocab, r, x, y, chain, spare);
}

/// ψ^{N_r(center)}: every ∃z θ becomes ∃z (δ(z,center) ≤ r ∧ θ′) and every
/// ∀z θ becomes ∀z (δ(z,center) ≤ r → θ′). Binders named like `center` are
/// renamed first, so `center` may be free in ψ or fresh.
inline Formula relativize(const Formula& psi, const std::string& center, int r, const Vocabulary& vocab) {
    if (r < 0)
        throw DomainError("relativization radius must be nonnegative");
    std::set<std::string> scope = free_variables(psi);
    scope.insert(center);
    std::set<std::string> used = all_variables(psi);
    used.insert(center);
    Formula named = detail::normalize_in(psi, scope, used);
    std::set<std::string> avoid = all_variables(named);
    avoid.insert(center);

    auto rec = [&](auto& self, const Formula& f) -> Formula {
        switch (f.kind()) {
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            Formula guard = dist_formula(vocab, r, f.variable(), center, avoid);
            Formula body = self(self, f.body());
            if (f.is(FormulaKind::Exists))
                return exists(f.variable(), conj(guard, body));
            return forall(f.variable(), implies(guard, body));
        }
        case FormulaKind::Not:
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> kids;
            for (const auto& c : f.children())
                kids.push_back(self(self, c));
            return Formula::make(f.kind(), {}, {}, std::move(kids));
        }
        default:
            return f;
        }
    };
    return rec(rec, named);
}

struct BasicLocalSentence {
    Formula sentence;
    int radius = 0;
    int width = 0;
    /// ψ with its single free variable `variable`.
    Formula local_condition;
    std::string variable;
};

/// ∃x1…∃xn (⋀_{i<j} ¬δ(xi,xj) ≤ 2r ∧ ⋀_i ψ^{N_r(xi)}(xi)).
/// The scatter conjunction lists each unordered pair once.
inline BasicLocalSentence basic_local_sentence(int n, int r, const Formula& psi, const Vocabulary& vocab) {
    if (n < 1)
        throw DomainError("width of a basic local sentence must be at least 1");
    if (r < 0)
        throw DomainError("locality radius must be nonnegative");
    auto free = free_variables(psi);
    if (free.size() > 1)
        throw DomainError("local condition must have at most one free variable");
    std::string var = free.empty() ? fresh_variable("x", all_variables(psi)) : *free.begin();

    std::set<std::string> avoid = all_variables(psi);
    avoid.insert(var);
    std::vector<std::string> xs;
    for (int i = 1; i <= n; ++i) {
        xs.push_back(fresh_variable("x" + std::to_string(i), avoid));
        avoid.insert(xs.back());
    }
    std::vector<Formula> parts;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            parts.push_back(negate(dist_formula(vocab, 2 * r, xs[static_cast<std::size_t>(i)],
                                                xs[static_cast<std::size_t>(j)], avoid)));
    for (const auto& xi : xs)
        parts.push_back(relativize(substitute(psi, var, Term::var(xi)), xi, r, vocab));
    return BasicLocalSentence{exists_all(xs, conj_all(parts)), r, n, psi, var};
}

}  // namespace hompres
