#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// A variable, or a constant naming an element (constants only arise inside
/// the plebeian translation).
struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Variable;
    std::string name;

    static Term var(std::string name) { return Term{Kind::Variable, std::move(name)}; }
    static Term constant(ElementId id) { return Term{Kind::Constant, std::move(id)}; }
    bool is_variable() const noexcept { return kind == Kind::Variable; }
    bool is_constant() const noexcept { return kind == Kind::Constant; }

    friend auto operator<=>(const Term&, const Term&) = default;
    friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { True, False, Atom, Equality, Not, And, Or, Exists, Forall };

/// Immutable first-order formula; subtrees are shared.
class Formula {
public:
    Formula() : Formula(make(FormulaKind::True)) {}

    FormulaKind kind() const noexcept { return node_->kind; }
    bool is(FormulaKind k) const noexcept { return node_->kind == k; }

    /// Relation symbol of an atom.
    const std::string& symbol() const { return node_->name; }
    /// Bound variable of a quantifier.
    const std::string& variable() const { return node_->name; }
    /// Arguments of an atom, or the two sides of an equality.
    const std::vector<Term>& terms() const { return node_->terms; }
    const std::vector<Formula>& children() const { return node_->children; }
    const Formula& child(std::size_t i) const { return node_->children.at(i); }
    const Formula& body() const { return node_->children.at(0); }
    const Formula& lhs() const { return node_->children.at(0); }
    const Formula& rhs() const { return node_->children.at(1); }

    friend bool operator==(const Formula& a, const Formula& b) {
        if (a.node_ == b.node_)
            return true;
        return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
               a.node_->terms == b.node_->terms && a.node_->children == b.node_->children;
    }

    static Formula make(FormulaKind kind, std::string name = {}, std::vector<Term> terms = {},
                        std::vector<Formula> children = {}) {
        Formula f(nullptr);
        f.node_ = std::make_shared<const Node>(Node{kind, std::move(name), std::move(terms), std::move(children)});
        return f;
    }

private:
    struct Node {
        FormulaKind kind;
        std::string name;
        std::vector<Term> terms;
        std::vector<Formula> children;
    };
    explicit Formula(std::nullptr_t) {}

    std::shared_ptr<const Node> node_;
};

// Builders.

inline Formula top() { return Formula::make(FormulaKind::True); }
inline Formula bottom() { return Formula::make(FormulaKind::False); }
inline Formula atom(std::string symbol, std::vector<Term> args) {
    return Formula::make(FormulaKind::Atom, std::move(symbol), std::move(args));
}
/// Atom over variables given by name.
inline Formula atom(std::string symbol, std::initializer_list<const char*> vars) {
    std::vector<Term> args;
    for (const char* v : vars)
        args.push_back(Term::var(v));
    return atom(std::move(symbol), std::move(args));
}
inline Formula atom_vars(std::string symbol, const std::vector<std::string>& vars) {
    std::vector<Term> args;
    for (const auto& v : vars)
        args.push_back(Term::var(v));
    return atom(std::move(symbol), std::move(args));
}
inline Formula equals(Term a, Term b) { return Formula::make(FormulaKind::Equality, {}, {std::move(a), std::move(b)}); }
inline Formula equals(const std::string& x, const std::string& y) { return equals(Term::var(x), Term::var(y)); }
inline Formula negate(Formula f) { return Formula::make(FormulaKind::Not, {}, {}, {std::move(f)}); }
inline Formula conj(Formula a, Formula b) { return Formula::make(FormulaKind::And, {}, {}, {std::move(a), std::move(b)}); }
inline Formula disj(Formula a, Formula b) { return Formula::make(FormulaKind::Or, {}, {}, {std::move(a), std::move(b)}); }
inline Formula implies(Formula a, Formula b) { return disj(negate(std::move(a)), std::move(b)); }
inline Formula exists(std::string var, Formula body) {
    return Formula::make(FormulaKind::Exists, std::move(var), {}, {std::move(body)});
}
inline Formula forall(std::string var, Formula body) {
    return Formula::make(FormulaKind::Forall, std::move(var), {}, {std::move(body)});
}

/// Left-nested conjunction; the empty conjunction is ⊤.
inline Formula conj_all(const std::vector<Formula>& parts) {
    if (parts.empty())
        return top();
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = conj(f, parts[i]);
    return f;
}

/// Left-nested disjunction; the empty disjunction is ⊥.
inline Formula disj_all(const std::vector<Formula>& parts) {
    if (parts.empty())
        return bottom();
    Formula f = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i)
        f = disj(f, parts[i]);
    return f;
}

/// ∃v1 … ∃vn body, outermost first.
inline Formula exists_all(const std::vector<std::string>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = exists(*it, std::move(body));
    return body;
}

inline Formula forall_all(const std::vector<std::string>& vars, Formula body) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = forall(*it, std::move(body));
    return body;
}

// Syntactic measures.

inline int quantifier_rank(const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        return 1 + quantifier_rank(f.body());
    default: {
        int r = 0;
        for (const auto& c : f.children())
            r = std::max(r, quantifier_rank(c));
        return r;
    }
    }
}

/// Built from atoms (and ⊤, ⊥) with ∧, ∨ and ∃ only.
inline bool is_existential_positive(const Formula& f) {
    if (f.is(FormulaKind::Not) || f.is(FormulaKind::Forall))
        return false;
    return std::all_of(f.children().begin(), f.children().end(),
                       [](const Formula& c) { return is_existential_positive(c); });
}

inline std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    for (const auto& c : f.children())
        n += formula_size(c);
    return n;
}

namespace detail {

inline void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equality:
        for (const auto& t : f.terms())
            if (t.is_variable() && !bound.count(t.name))
                out.insert(t.name);
        return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        bool fresh = bound.insert(f.variable()).second;
        collect_free(f.body(), bound, out);
        if (fresh)
            bound.erase(f.variable());
        return;
    }
    default:
        for (const auto& c : f.children())
            collect_free(c, bound, out);
    }
}

inline void collect_all(const Formula& f, std::set<std::string>& out) {
    if (f.is(FormulaKind::Exists) || f.is(FormulaKind::Forall))
        out.insert(f.variable());
    for (const auto& t : f.terms())
        if (t.is_variable())
            out.insert(t.name);
    for (const auto& c : f.children())
        collect_all(c, out);
}

inline void collect_constants(const Formula& f, std::set<std::string>& out) {
    for (const auto& t : f.terms())
        if (t.is_constant())
            out.insert(t.name);
    for (const auto& c : f.children())
        collect_constants(c, out);
}

}  // namespace detail

inline std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    detail::collect_free(f, bound, out);
    return out;
}

/// Every variable name occurring free or bound.
inline std::set<std::string> all_variables(const Formula& f) {
    std::set<std::string> out;
    detail::collect_all(f, out);
    return out;
}

inline std::set<std::string> constants_of(const Formula& f) {
    std::set<std::string> out;
    detail::collect_constants(f, out);
    return out;
}

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

/// `base` if unused, else the first of base1, base2, … not in `avoid`.
inline std::string fresh_variable(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base))
        return base;
    for (int i = 1;; ++i) {
        std::string candidate = base + std::to_string(i);
        if (!avoid.count(candidate))
            return candidate;
    }
}

/// Capture-avoiding substitution of `replacement` for the free occurrences of `var`.
inline Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
    switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
        return f;
    case FormulaKind::Atom:
    case FormulaKind::Equality: {
        std::vector<Term> terms = f.terms();
        bool changed = false;
        for (auto& t : terms)
            if (t.is_variable() && t.name == var) {
                t = replacement;
                changed = true;
            }
        if (!changed)
            return f;
        return Formula::make(f.kind(), f.symbol(), std::move(terms));
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        if (f.variable() == var || !free_variables(f.body()).count(var))
            return f;
        std::string bound = f.variable();
        Formula body = f.body();
        if (replacement.is_variable() && replacement.name == bound) {
            auto avoid = all_variables(body);
            avoid.insert(var);
            avoid.insert(replacement.name);
            std::string renamed = fresh_variable(bound, avoid);
            body = substitute(body, bound, Term::var(renamed));
            bound = renamed;
        }
        return Formula::make(f.kind(), bound, {}, {substitute(body, var, replacement)});
    }
    default: {
        std::vector<Formula> kids;
        for (const auto& c : f.children())
            kids.push_back(substitute(c, var, replacement));
        return Formula::make(f.kind(), {}, {}, std::move(kids));
    }
    }
}

namespace detail {

inline Formula normalize_in(const Formula& f, std::set<std::string>& scope, std::set<std::string>& used) {
    switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        std::string v = f.variable();
        Formula body = f.body();
        if (scope.count(v)) {
            std::string renamed = fresh_variable(v, used);
            body = substitute(body, v, Term::var(renamed));
            v = renamed;
        }
        used.insert(v);
        scope.insert(v);
        Formula inner = normalize_in(body, scope, used);
        scope.erase(v);
        return Formula::make(f.kind(), v, {}, {inner});
    }
    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::Or: {
        std::vector<Formula> kids;
        for (const auto& c : f.children())
            kids.push_back(normalize_in(c, scope, used));
        return Formula::make(f.kind(), {}, {}, std::move(kids));
    }
    default:
        return f;
    }
}

}  // namespace detail

/// Alpha-renames binders so that no bound variable shadows an enclosing binder
/// or coincides with a free variable.
inline Formula normalize(const Formula& f) {
    std::set<std::string> scope = free_variables(f);
    std::set<std::string> used = all_variables(f);
    return detail::normalize_in(f, scope, used);
}

inline bool is_well_named(const Formula& f) { return normalize(f) == f; }

// Concrete syntax: E x φ, A x φ, !φ, (φ & ψ), (φ | ψ), R(x,y), R, x = y,
// true, false. Constants print as @id.

namespace detail {

inline void print_term(std::string& out, const Term& t) {
    if (t.is_constant())
        out += '@';
    out += t.name;
}

inline void print_formula(std::string& out, const Formula& f) {
    switch (f.kind()) {
    case FormulaKind::True:
        out += "true";
        return;
    case FormulaKind::False:
        out += "false";
        return;
    case FormulaKind::Atom:
        out += f.symbol();
        if (!f.terms().empty()) {
            out += '(';
            for (std::size_t i = 0; i < f.terms().size(); ++i) {
                if (i)
                    out += ',';
                print_term(out, f.terms()[i]);
            }
            out += ')';
        }
        return;
    case FormulaKind::Equality:
        print_term(out, f.terms()[0]);
        out += " = ";
        print_term(out, f.terms()[1]);
        return;
    case FormulaKind::Not:
        out += '!';
        print_formula(out, f.body());
        return;
    case FormulaKind::And:
    case FormulaKind::Or:
        out += '(';
        print_formula(out, f.lhs());
        out += f.is(FormulaKind::And) ? " & " : " | ";
        print_formula(out, f.rhs());
        out += ')';
        return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        out += f.is(FormulaKind::Exists) ? "E " : "A ";
        out += f.variable();
        out += ' ';
        print_formula(out, f.body());
        return;
    }
}

}  // namespace detail

inline std::string to_string(const Formula& f) {
    std::string out;
    detail::print_formula(out, f);
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace hompres
