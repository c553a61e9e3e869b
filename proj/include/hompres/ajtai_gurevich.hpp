#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/formula.hpp"
#include "hompres/formula_parser.hpp"
#include "hompres/graph.hpp"
#include "hompres/homomorphism.hpp"
#include "hompres/locality.hpp"
#include "hompres/scattered.hpp"
#include "hompres/structure.hpp"

namespace hompres {

/// Basic local sentences φ_1..φ_s with radii t_i and widths n_i.
struct BasicLocalProfile {
    Vocabulary vocabulary;
    std::vector<BasicLocalSentence> sentences;

    std::size_t s() const { return sentences.size(); }
    int t() const {
        int out = 0;
        for (const auto& b : sentences)
            out = std::max(out, b.radius);
        return out;
    }
    int n() const {
        int out = 0;
        for (const auto& b : sentences)
            out = std::max(out, b.width);
        return out;
    }
    int r() const { return 2 * t(); }
    std::size_t m() const {
        if (s() >= 20)
            throw DomainError("profile has too many sentences for m = 2^s + 1");
        return (std::size_t{1} << s()) + 1;
    }
};

/// One sentence per non-empty line: `<radius> <width> <local condition>`,
/// the condition having at most one free variable. `#` starts a comment.
inline BasicLocalProfile parse_profile(const std::string& text, const Vocabulary& vocab) {
    BasicLocalProfile p;
    p.vocabulary = vocab;
    std::istringstream in(text);
    std::string line;
    std::size_t offset = 0, next = 0;
    while (std::getline(in, line)) {
        offset = next;
        next += line.size() + 1;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        int radius = 0, width = 0;
        if (!(ls >> radius)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            throw ParseError("profile: expected radius", offset);
        }
        if (!(ls >> width))
            throw ParseError("profile: expected width", offset);
        std::string rest;
        std::getline(ls, rest);
        p.sentences.push_back(basic_local_sentence(width, radius, parse_formula(rest, vocab), vocab));
    }
    if (p.sentences.empty())
        throw ParseError("profile lists no sentences", text.size());
    return p;
}

/// θ_i(y) = ∃x (δ(x,y) ≤ t_i ∧ ψ_i^{N_{t_i}(x)}(x)); 0-based i.
inline Formula ag_theta(const BasicLocalProfile& profile, std::size_t i, const std::string& y = "y") {
    if (i >= profile.s())
        throw DomainError("profile has no sentence " + std::to_string(i + 1));
    const auto& b = profile.sentences[i];
    std::set<std::string> avoid = all_variables(b.local_condition);
    avoid.insert(y);
    std::string x = fresh_variable("x", avoid);
    avoid.insert(x);
    Formula psi = substitute(b.local_condition, b.variable, Term::var(x));
    return exists(x, conj(dist_formula(profile.vocabulary, b.radius, x, y, avoid),
                          relativize(psi, x, b.radius, profile.vocabulary)));
}

/// First pair i < j (lexicographic) of equal rows.
inline std::optional<std::pair<std::size_t, std::size_t>> pigeonhole_pair(
    const std::vector<std::vector<bool>>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[i] == rows[j])
                return std::pair(i, j);
    return std::nullopt;
}

struct ConstructionTrace {
    int r = 0;
    std::size_t m = 0;
    std::size_t copies = 0;
    std::vector<ElementId> scattered;
    std::vector<std::vector<bool>> theta;  // theta[c][l]: 𝔄 ⊨ θ_l[c]
    std::size_t i = 0, j = 0;               // the pigeonhole pair, indices into `scattered`

    /// The removed tuple through c_i, or none for the element-deletion branch.
    std::optional<std::pair<std::string, std::vector<ElementId>>> removed_tuple;
    bool element_deleted = false;

    Structure a, b, b_n, a_n;
    bool phi_a = false, phi_b = false, phi_a_n = false, phi_b_n = false;
    HomCertificate inclusion;  // 𝔄 → 𝔄_n
    HomCertificate fold;       // 𝔅_n → 𝔅
    bool inclusion_ok = false, fold_ok = false;
    bool b_proper = false;

    bool agreement() const { return phi_a_n == phi_b_n; }
    /// 𝔅 is a proper substructure of 𝔄 and a model, so 𝔄 is not minimal.
    bool non_minimal() const { return b_proper && phi_b; }
    bool certified() const { return inclusion_ok && fold_ok && b_proper; }
};

/// The construction that shows a model of φ with a large scattered set is not
/// minimal: pick c_i, c_j agreeing on every θ_l, drop the least tuple through
/// c_i (or c_i itself when it lies in no tuple) to get 𝔅, and compare
/// 𝔄_n = 𝔄 ⊕ n𝔅 with 𝔅_n = n𝔅. `copies` = 0 means n = max width.
inline ConstructionTrace ag_construct(const Structure& a, const Formula& phi, const BasicLocalProfile& profile,
                                      const std::vector<ElementId>& scattered, std::size_t copies = 0) {
    if (!(a.vocabulary() == profile.vocabulary))
        throw VocabularyMismatch("structure and profile are over different vocabularies");
    ConstructionTrace tr;
    tr.r = profile.r();
    tr.m = profile.m();
    tr.copies = copies ? copies : static_cast<std::size_t>(std::max(profile.n(), 1));
    tr.scattered = scattered;
    tr.a = a;
    for (const auto& c : scattered)
        a.require_index(c);
    if (scattered.size() != tr.m)
        throw DomainError("scattered set has " + std::to_string(scattered.size()) + " elements, expected m = " +
                          std::to_string(tr.m));
    if (!is_r_scattered(gaifman_graph(a), scattered, tr.r))
        throw DomainError("given set is not " + std::to_string(tr.r) + "-scattered");
    CompiledFormula f(phi, a.vocabulary());
    tr.phi_a = f.evaluate(a);
    if (!tr.phi_a)
        throw DomainError("structure is not a model of the formula");

    std::vector<CompiledFormula> thetas;
    for (std::size_t l = 0; l < profile.s(); ++l)
        thetas.emplace_back(ag_theta(profile, l, "y"), a.vocabulary(), std::vector<std::string>{"y"});
    for (const auto& c : scattered) {
        std::vector<bool> row;
        int idx = a.require_index(c);
        for (const auto& th : thetas)
            row.push_back(th.evaluate(a, std::vector<int>{idx}));
        tr.theta.push_back(std::move(row));
    }
    auto pair = pigeonhole_pair(tr.theta);
    if (!pair)
        throw Error("internal error: no pigeonhole pair among 2^s + 1 rows");
    tr.i = pair->first;
    tr.j = pair->second;

    const int ci = a.require_index(scattered[tr.i]);
    std::optional<std::pair<std::size_t, Tuple>> drop;
    for (const auto& fact : a.facts())
        if (std::find(fact.second.begin(), fact.second.end(), ci) != fact.second.end()) {
            drop = fact;
            break;
        }
    if (drop) {
        auto rels = a.relations();
        auto& rel = rels[drop->first];
        rel.erase(std::find(rel.begin(), rel.end(), drop->second));
        tr.b = Structure(a.vocabulary(), a.universe(), std::move(rels));
        tr.removed_tuple = std::pair(a.vocabulary()[drop->first].name, a.ids(drop->second));
    } else {
        std::vector<int> keep;
        for (int e = 0; e < static_cast<int>(a.size()); ++e)
            if (e != ci)
                keep.push_back(e);
        tr.b = induced_substructure(a, keep);
        tr.element_deleted = true;
    }
    tr.b_proper = is_substructure(tr.b, a) && !(tr.b == a);

    std::vector<Structure> parts(tr.copies, tr.b);
    tr.b_n = disjoint_union(std::span<const Structure>(parts), a.vocabulary());
    tr.a_n = disjoint_union(a, tr.b_n);
    for (const auto& e : a.universe())
        tr.inclusion.emplace(e, "l." + e);
    for (std::size_t p = 0; p < tr.copies; ++p)
        for (const auto& e : tr.b.universe())
            tr.fold.emplace(std::to_string(p) + "." + e, e);
    tr.inclusion_ok = is_hom(a, tr.a_n, tr.inclusion);
    tr.fold_ok = is_hom(tr.b_n, tr.b, tr.fold);

    tr.phi_b = f.evaluate(tr.b);
    tr.phi_a_n = f.evaluate(tr.a_n);
    tr.phi_b_n = f.evaluate(tr.b_n);
    return tr;
}

inline std::string format_trace(const ConstructionTrace& tr) {
    auto yes = [](bool b) { return b ? "TRUE" : "FALSE"; };
    std::ostringstream out;
    out << "r = " << tr.r << ", m = " << tr.m << ", copies n = " << tr.copies << "\n";
    for (std::size_t c = 0; c < tr.scattered.size(); ++c) {
        out << "theta(" << tr.scattered[c] << ") =";
        for (bool v : tr.theta[c])
            out << ' ' << (v ? 1 : 0);
        out << "\n";
    }
    out << "pair: c_i = " << tr.scattered[tr.i] << ", c_j = " << tr.scattered[tr.j] << "\n";
    if (tr.removed_tuple) {
        out << "B: removed " << tr.removed_tuple->first << "(";
        for (std::size_t k = 0; k < tr.removed_tuple->second.size(); ++k)
            out << (k ? "," : "") << tr.removed_tuple->second[k];
        out << ")\n";
    } else {
        out << "B: removed element " << tr.scattered[tr.i] << " (it lies in no tuple)\n";
    }
    out << "A |= phi: " << yes(tr.phi_a) << "\n";
    out << "B |= phi: " << yes(tr.phi_b) << "\n";
    out << "A_n |= phi: " << yes(tr.phi_a_n) << "\n";
    out << "B_n |= phi: " << yes(tr.phi_b_n) << "\n";
    out << "hom A -> A_n: " << (tr.inclusion_ok ? "VERIFIED" : "FAILED") << "\n";
    out << "hom B_n -> B: " << (tr.fold_ok ? "VERIFIED" : "FAILED") << "\n";
    out << "B proper substructure of A: " << yes(tr.b_proper) << "\n";
    out << "A_n and B_n agree: " << yes(tr.agreement());
    if (!tr.agreement())
        out << " (either a bug or phi is not a Boolean combination of the profile)";
    out << "\n";
    out << "A not minimal: " << yes(tr.non_minimal()) << "\n";
    return out.str();
}

}  // namespace hompres
