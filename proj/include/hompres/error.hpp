#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hompres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two structures (or a structure and a formula) disagree on their vocabulary.
class VocabularyMismatch : public Error {
public:
    using Error::Error;
};

/// An element id that is not part of the universe / vertex set.
class UnknownElement : public Error {
public:
    explicit UnknownElement(const std::string& id)
        : Error("unknown element '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

/// Parameters outside an operation's documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed structure or formula text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// An exact search refused its input or ran out of its node budget.
class SearchLimitExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace hompres
