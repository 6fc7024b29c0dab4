#pragma once

#include <stdexcept>
#include <string>

namespace j2aig {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LexError : public Error {
public:
    LexError(int line, int col, const std::string& what)
        : Error("lex error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

class ParseError : public Error {
public:
    ParseError(int line, int col, const std::string& what)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

/// A language restriction on functions or calls was violated.
class RestrictionError : public Error {
public:
    RestrictionError(int line, const std::string& what)
        : Error("restriction violated at line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Name resolution or typing problem found while lowering a program.
class SemanticError : public Error {
public:
    using Error::Error;
};

class DuplicateSpecName : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class PostWithoutPre : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class UnknownFunction : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class ArityMismatch : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class ArraySizeMismatch : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class NonConstantRange : public SemanticError {
public:
    using SemanticError::SemanticError;
};
class NestedUnsupported : public SemanticError {
public:
    using SemanticError::SemanticError;
};

// Runtime errors of the reference interpreter.
class RuntimeError : public Error {
public:
    using Error::Error;
};
class StepLimitExceeded : public RuntimeError {
public:
    explicit StepLimitExceeded(unsigned long long steps)
        : RuntimeError("step limit exceeded after " + std::to_string(steps) + " steps"), steps(steps) {}
    unsigned long long steps;
};
class DivisionByZero : public RuntimeError {
public:
    DivisionByZero() : RuntimeError("division by zero") {}
};
class OutOfBounds : public RuntimeError {
public:
    OutOfBounds(std::string array, long long index, long long size)
        : RuntimeError("index " + std::to_string(index) + " out of bounds for " + array + "[" +
                       std::to_string(size) + "]"),
          array(std::move(array)), index(index), size(size) {}
    std::string array;
    long long index;
    long long size;
};
class ArithmeticOverflow : public RuntimeError {
public:
    ArithmeticOverflow() : RuntimeError("arithmetic overflow") {}
};
class DepthExceeded : public RuntimeError {
public:
    explicit DepthExceeded(const std::string& fn) : RuntimeError("recursion depth exceeded in " + fn) {}
};

class FormatError : public Error {
public:
    FormatError(int line, const std::string& what)
        : Error("format error at line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

class IoError : public Error {
public:
    using Error::Error;
};

class UnsupportedOp : public Error {
public:
    using Error::Error;
};

class MissingSymbol : public Error {
public:
    using Error::Error;
};

} // namespace j2aig
