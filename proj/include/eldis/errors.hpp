// Exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace eldis {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// parser_io
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, std::string expected)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                ": expected " + expected),
          line(line), col(col), expected(std::move(expected)) {}
    int line;
    int col;
    std::string expected;
};

class DuplicateVarDecl : public Error {
public:
    using Error::Error;
};

class RoleUsedAsConcept : public Error {
public:
    using Error::Error;
};

class NonGroundBinding : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    using Error::Error;
};

// core
class UnboundVariable : public Error {
public:
    using Error::Error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

// local
class CyclicAssignment : public Error {
public:
    using Error::Error;
};

class SearchSpaceTooLarge : public Error {
public:
    using Error::Error;
};

// dismatch
class NotDismatching : public Error {
public:
    using Error::Error;
};

// sat
class NotVariablized : public Error {
public:
    using Error::Error;
};

class NotASolution : public Error {
public:
    using Error::Error;
};

class InternalEncodingError : public Error {
public:
    using Error::Error;
};

class ExternalSolverError : public Error {
public:
    ExternalSolverError(int status, const std::string& excerpt)
        : Error("external solver failed (status " + std::to_string(status) + "): " + excerpt),
          status(status), stderrExcerpt(excerpt) {}
    int status;
    std::string stderrExcerpt;
};

class MalformedSolverOutput : public Error {
public:
    using Error::Error;
};

class TimeoutError : public Error {
public:
    using Error::Error;
};

// Invariant violations that indicate a bug rather than bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace eldis
