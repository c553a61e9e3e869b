#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "hompres/error.hpp"
#include "hompres/formula.hpp"
#include "hompres/structure.hpp"

namespace hompres {

// Grammar:
//   formula := "E" var formula | "A" var formula | "!" formula
//            | "(" formula op formula ")" | atom
//   op      := "&" | "|" | "->"
//   atom    := NAME "(" term {"," term} ")" | NAME | term "=" term | "true" | "false"
//   term    := var | "@" element-id
// Derived symbol names carry a suffix of the form "@1:2,3:1".

namespace detail {

class FormulaParser {
public:
    FormulaParser(const std::string& text, const Vocabulary* vocabulary) : text_(text), vocabulary_(vocabulary) {
        tokenize();
    }

    Formula parse() {
        Formula f = formula();
        if (peek().kind != Tok::End)
            error("unexpected '" + peek().text + "' after formula");
        return f;
    }

private:
    enum class Tok { Ident, Const, LParen, RParen, Comma, And, Or, Arrow, Bang, Eq, End };
    struct Token {
        Tok kind;
        std::string text;
        std::size_t pos;
    };

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
    static bool id_char(char c) {
        return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != '&' &&
               c != '|' && c != '!' && c != '=' && c != '-';
    }

    [[noreturn]] void error(const std::string& what, std::size_t pos) const { throw ParseError(what, pos); }
    [[noreturn]] void error(const std::string& what) const { error(what, peek().pos); }

    void tokenize() {
        std::size_t i = 0;
        while (i < text_.size()) {
            char c = text_[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
                continue;
            }
            std::size_t start = i;
            if (ident_start(c)) {
                while (i < text_.size() && ident_char(text_[i]))
                    ++i;
                if (i < text_.size() && text_[i] == '@') {
                    ++i;
                    while (i < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[i])) ||
                                                text_[i] == ':' || text_[i] == ','))
                        ++i;
                }
                tokens_.push_back({Tok::Ident, text_.substr(start, i - start), start});
                continue;
            }
            if (c == '@') {
                ++i;
                while (i < text_.size() && id_char(text_[i]))
                    ++i;
                if (i == start + 1)
                    error("empty constant name", start);
                tokens_.push_back({Tok::Const, text_.substr(start + 1, i - start - 1), start});
                continue;
            }
            if (c == '-' && i + 1 < text_.size() && text_[i + 1] == '>') {
                tokens_.push_back({Tok::Arrow, "->", start});
                i += 2;
                continue;
            }
            Tok kind;
            switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case '&': kind = Tok::And; break;
            case '|': kind = Tok::Or; break;
            case '!': kind = Tok::Bang; break;
            case '=': kind = Tok::Eq; break;
            default: error(std::string("unexpected character '") + c + "'", start);
            }
            tokens_.push_back({kind, std::string(1, c), start});
            ++i;
        }
        tokens_.push_back({Tok::End, "end of input", text_.size()});
    }

    const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    Token take() {
        Token t = peek();
        if (pos_ < tokens_.size() - 1)
            ++pos_;
        return t;
    }
    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind)
            error(std::string("expected ") + what + ", found '" + peek().text + "'");
        return take();
    }

    static bool is_keyword(const std::string& s) { return s == "true" || s == "false"; }

    std::string variable_name() {
        Token t = expect(Tok::Ident, "variable");
        if (is_keyword(t.text) || t.text.find('@') != std::string::npos)
            error("'" + t.text + "' cannot be used as a variable", t.pos);
        return t.text;
    }

    Term term() {
        if (peek().kind == Tok::Const)
            return Term::constant(take().text);
        return Term::var(variable_name());
    }

    Formula formula() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::Ident) {
            bool is_exists = take().text == "E";
            std::string v = variable_name();
            Formula body = formula();
            return is_exists ? exists(v, body) : forall(v, body);
        }
        if (t.kind == Tok::Bang) {
            take();
            return negate(formula());
        }
        if (t.kind == Tok::LParen) {
            take();
            Formula a = formula();
            Token op = take();
            if (op.kind != Tok::And && op.kind != Tok::Or && op.kind != Tok::Arrow)
                error("expected '&', '|' or '->', found '" + op.text + "'", op.pos);
            Formula b = formula();
            expect(Tok::RParen, "')'");
            if (op.kind == Tok::And)
                return conj(a, b);
            if (op.kind == Tok::Or)
                return disj(a, b);
            return implies(a, b);
        }
        return atomic();
    }

    Formula atomic() {
        const Token t = peek();
        if (t.kind == Tok::Const || (t.kind == Tok::Ident && peek(1).kind == Tok::Eq && !is_keyword(t.text))) {
            Term a = term();
            expect(Tok::Eq, "'='");
            Term b = term();
            return equals(a, b);
        }
        if (t.kind != Tok::Ident)
            error("expected a formula, found '" + t.text + "'");
        take();
        if (t.text == "true")
            return top();
        if (t.text == "false")
            return bottom();
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) {
            take();
            args.push_back(term());
            while (peek().kind == Tok::Comma) {
                take();
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
        }
        if (vocabulary_) {
            auto sym = vocabulary_->find(t.text);
            if (!sym)
                error("unknown symbol '" + t.text + "'", t.pos);
            int arity = (*vocabulary_)[*sym].arity;
            if (arity != static_cast<int>(args.size()))
                error("symbol '" + t.text + "' has arity " + std::to_string(arity) + " but is applied to " +
                          std::to_string(args.size()) + " arguments",
                      t.pos);
        }
        return atom(t.text, std::move(args));
    }

    const std::string& text_;
    const Vocabulary* vocabulary_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses and checks every atom against `vocabulary`.
inline Formula parse_formula(const std::string& text, const Vocabulary& vocabulary) {
    return detail::FormulaParser(text, &vocabulary).parse();
}

/// Parses without a vocabulary; bare names become 0-ary atoms.
inline Formula parse_formula(const std::string& text) { return detail::FormulaParser(text, nullptr).parse(); }

/// Throws if some atom of `f` is not over `vocabulary` with the right arity.
inline void check_vocabulary(const Formula& f, const Vocabulary& vocabulary) {
    if (f.is(FormulaKind::Atom)) {
        auto sym = vocabulary.find(f.symbol());
        if (!sym)
            throw VocabularyMismatch("formula uses unknown symbol '" + f.symbol() + "'");
        if (vocabulary[*sym].arity != static_cast<int>(f.terms().size()))
            throw VocabularyMismatch("formula applies '" + f.symbol() + "' with the wrong arity");
    }
    for (const auto& c : f.children())
        check_vocabulary(c, vocabulary);
}

}  // namespace hompres
