#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/graph.hpp"
#include "hompres/structure.hpp"

namespace hompres {

// Line-based text format:
//   vocab <Name>/<arity>      one per symbol, first
//   element <id>              one per element, next
//   rel <Name> <id1> ... <idk>
// '#' starts a comment line. Sections must appear in this order.

inline Structure parse_structure(const std::string& text) {
    enum class Section { Vocab, Elements, Relations };
    Section section = Section::Vocab;
    std::vector<Symbol> symbols;
    RawStructure raw;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) { throw ParseError("line " + std::to_string(line_no) + ": " + what, line_no); };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string keyword;
        if (!(ls >> keyword) || keyword[0] == '#')
            continue;
        std::vector<std::string> args;
        for (std::string w; ls >> w;)
            args.push_back(w);

        if (keyword == "vocab") {
            if (section != Section::Vocab)
                fail("vocab line after elements or relations");
            if (args.size() != 1)
                fail("expected 'vocab <Name>/<arity>'");
            auto slash = args[0].rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == args[0].size())
                fail("expected 'vocab <Name>/<arity>'");
            int arity = 0;
            try {
                std::size_t used = 0;
                arity = std::stoi(args[0].substr(slash + 1), &used);
                if (used != args[0].size() - slash - 1 || arity < 0)
                    fail("bad arity in '" + args[0] + "'");
            } catch (const std::logic_error&) {
                fail("bad arity in '" + args[0] + "'");
            }
            symbols.push_back({args[0].substr(0, slash), arity});
        } else if (keyword == "element") {
            if (section == Section::Relations)
                fail("element line after relations");
            if (section == Section::Vocab) {
                try {
                    raw.vocabulary = Vocabulary(symbols);
                } catch (const DomainError& e) {
                    fail(e.what());
                }
            }
            section = Section::Elements;
            if (args.size() != 1)
                fail("expected 'element <id>'");
            raw.universe.push_back(args[0]);
        } else if (keyword == "rel") {
            if (section == Section::Vocab) {
                try {
                    raw.vocabulary = Vocabulary(symbols);
                } catch (const DomainError& e) {
                    fail(e.what());
                }
            }
            section = Section::Relations;
            if (args.empty())
                fail("expected 'rel <Name> <ids...>'");
            auto sym = raw.vocabulary.find(args[0]);
            if (!sym)
                fail("unknown symbol '" + args[0] + "'");
            std::vector<ElementId> tuple(args.begin() + 1, args.end());
            if (static_cast<int>(tuple.size()) != raw.vocabulary[*sym].arity)
                fail("wrong arity for '" + args[0] + "'");
            raw.facts.emplace_back(args[0], std::move(tuple));
        } else {
            fail("unknown keyword '" + keyword + "'");
        }
    }
    if (section == Section::Vocab) {
        try {
            raw.vocabulary = Vocabulary(symbols);
        } catch (const DomainError& e) {
            fail(e.what());
        }
    }
    auto violations = validate_structure(raw);
    if (!violations.empty())
        throw ParseError(violations.front().message, line_no);
    return Structure::from_raw(raw);
}

inline std::string print_structure(const Structure& a) {
    std::ostringstream out;
    for (const auto& s : a.vocabulary().symbols())
        out << "vocab " << s.name << '/' << s.arity << '\n';
    for (const auto& e : a.universe())
        out << "element " << e << '\n';
    for (std::size_t s = 0; s < a.vocabulary().size(); ++s)
        for (const auto& t : a.relation(s)) {
            out << "rel " << a.vocabulary()[s].name;
            for (int x : t)
                out << ' ' << a.element(x);
            out << '\n';
        }
    return out.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Structure load_structure(const std::string& path) { return parse_structure(read_text_file(path)); }

/// Reads a graph stored as a structure over E/2. Each listed pair is added in
/// both directions; loops are rejected.
inline Graph parse_graph(const std::string& text) {
    Structure s = parse_structure(text);
    if (!(s.vocabulary() == Vocabulary{{"E", 2}}))
        throw ParseError("graph files must declare exactly the symbol E/2", 0);
    std::vector<std::vector<int>> adj(s.size());
    for (const auto& t : s.relation(0)) {
        if (t[0] == t[1])
            throw ParseError("loop at element '" + s.element(t[0]) + "'", 0);
        adj[static_cast<std::size_t>(t[0])].push_back(t[1]);
    }
    return Graph(s.universe(), std::move(adj));
}

inline Graph load_graph(const std::string& path) { return parse_graph(read_text_file(path)); }

inline std::string print_graph(const Graph& g) { return print_structure(graph_structure(g)); }

}  // namespace hompres
