#pragma once

#include <stdexcept>
#include <string>

namespace tubgemm {

// Error taxonomy, mirrored by the CLI exit codes:
//   ParseError    -> 3  (malformed input files)
//   DomainError   -> 4  (out-of-range values, bad shapes, bad parameters)
//   OverflowError -> 5  (accumulator width contract violated)
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Malformed temporal-unary streams (pulse after gap, misplaced residue).
class FormatError : public DomainError {
public:
    explicit FormatError(const std::string& msg) : DomainError(msg) {}
};

// Overflow is a hard error, never a silent wraparound.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& msg) : Error(msg) {}
};

} // namespace tubgemm
