#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/formula.hpp"
#include "hompres/formula_parser.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Partial map from variables to elements.
using Assignment = std::map<std::string, ElementId>;

/// A formula resolved against a vocabulary: symbols become indices and every
/// binder gets its own slot, so shadowing is handled by scope and the same
/// compiled formula can be evaluated on many structures.
class CompiledFormula {
public:
    /// `free_order` fixes the slot order of the free variables; by default they
    /// are taken in sorted order.
    CompiledFormula(const Formula& f, const Vocabulary& vocabulary, std::vector<std::string> free_order = {})
        : vocabulary_(vocabulary) {
        check_vocabulary(f, vocabulary);
        auto free = hompres::free_variables(f);
        if (free_order.empty())
            free_order.assign(free.begin(), free.end());
        for (const auto& v : free)
            if (std::find(free_order.begin(), free_order.end(), v) == free_order.end())
                throw DomainError("free variable '" + v + "' has no slot");
        free_ = std::move(free_order);
        std::vector<std::pair<std::string, int>> scope;
        for (std::size_t i = 0; i < free_.size(); ++i)
            scope.emplace_back(free_[i], static_cast<int>(i));
        slots_ = static_cast<int>(free_.size());
        root_ = compile(f, scope);
    }

    const std::vector<std::string>& free_variables() const noexcept { return free_; }
    const Vocabulary& vocabulary() const noexcept { return vocabulary_; }

    bool evaluate(const Structure& a, std::span<const int> free_values = {}) const {
        if (!(a.vocabulary() == vocabulary_))
            throw VocabularyMismatch("formula and structure are over different vocabularies");
        if (free_values.size() != free_.size())
            throw DomainError("expected " + std::to_string(free_.size()) + " free-variable values");
        std::vector<int> env(static_cast<std::size_t>(slots_), -1);
        std::copy(free_values.begin(), free_values.end(), env.begin());
        std::vector<int> consts;
        consts.reserve(constants_.size());
        for (const auto& c : constants_)
            consts.push_back(a.require_index(c));
        return eval(root_, a, env, consts);
    }

    bool evaluate(const Structure& a, const Assignment& assignment) const {
        std::vector<int> values;
        for (const auto& v : free_) {
            auto it = assignment.find(v);
            if (it == assignment.end())
                throw DomainError("free variable '" + v + "' is not assigned");
            values.push_back(a.require_index(it->second));
        }
        return evaluate(a, values);
    }

private:
    struct Node {
        FormulaKind kind;
        int symbol = -1;
        std::vector<int> args;  // slot ≥ 0, constant c as -(c+1)
        int a = -1, b = -1;
        int slot = -1;
    };

    int arg_code(const Term& t, const std::vector<std::pair<std::string, int>>& scope) {
        if (t.is_constant()) {
            auto it = std::find(constants_.begin(), constants_.end(), t.name);
            if (it == constants_.end()) {
                constants_.push_back(t.name);
                it = constants_.end() - 1;
            }
            return -static_cast<int>(it - constants_.begin()) - 1;
        }
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == t.name)
                return it->second;
        throw DomainError("free variable '" + t.name + "' is not assigned");
    }

    int compile(const Formula& f, std::vector<std::pair<std::string, int>>& scope) {
        Node n;
        n.kind = f.kind();
        switch (f.kind()) {
        case FormulaKind::Atom:
            n.symbol = static_cast<int>(vocabulary_.index_of(f.symbol()));
            [[fallthrough]];
        case FormulaKind::Equality:
            for (const auto& t : f.terms())
                n.args.push_back(arg_code(t, scope));
            break;
        case FormulaKind::Not:
            n.a = compile(f.body(), scope);
            break;
        case FormulaKind::And:
        case FormulaKind::Or:
            n.a = compile(f.lhs(), scope);
            n.b = compile(f.rhs(), scope);
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall:
            n.slot = slots_++;
            scope.emplace_back(f.variable(), n.slot);
            n.a = compile(f.body(), scope);
            scope.pop_back();
            break;
        default:
            break;
        }
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }

    static int value(int code, const std::vector<int>& env, const std::vector<int>& consts) {
        return code >= 0 ? env[static_cast<std::size_t>(code)] : consts[static_cast<std::size_t>(-code - 1)];
    }

    bool eval(int id, const Structure& a, std::vector<int>& env, const std::vector<int>& consts) const {
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        switch (n.kind) {
        case FormulaKind::True:
            return true;
        case FormulaKind::False:
            return false;
        case FormulaKind::Atom: {
            int buf[16];
            std::vector<int> big;
            int* t = buf;
            if (n.args.size() > 16) {
                big.resize(n.args.size());
                t = big.data();
            }
            for (std::size_t i = 0; i < n.args.size(); ++i)
                t[i] = value(n.args[i], env, consts);
            return a.holds(static_cast<std::size_t>(n.symbol), std::span<const int>(t, n.args.size()));
        }
        case FormulaKind::Equality:
            return value(n.args[0], env, consts) == value(n.args[1], env, consts);
        case FormulaKind::Not:
            return !eval(n.a, a, env, consts);
        case FormulaKind::And:
            return eval(n.a, a, env, consts) && eval(n.b, a, env, consts);
        case FormulaKind::Or:
            return eval(n.a, a, env, consts) || eval(n.b, a, env, consts);
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            const bool want = n.kind == FormulaKind::Exists;
            const int size = static_cast<int>(a.size());
            int& slot = env[static_cast<std::size_t>(n.slot)];
            const int saved = slot;
            bool result = !want;
            for (int v = 0; v < size; ++v) {
                slot = v;
                if (eval(n.a, a, env, consts) == want) {
                    result = want;
                    break;
                }
            }
            slot = saved;
            return result;
        }
        }
        return false;
    }

    Vocabulary vocabulary_;
    std::vector<std::string> free_;
    std::vector<std::string> constants_;
    std::vector<Node> nodes_;
    int root_ = -1;
    int slots_ = 0;
};

/// a ⊨ φ[assignment]; quantifiers range over the universe.
inline bool evaluate(const Structure& a, const Formula& phi, const Assignment& assignment = {}) {
    return CompiledFormula(phi, a.vocabulary()).evaluate(a, assignment);
}

}  // namespace hompres
