#pragma once

#include <stdexcept>
#include <string>

namespace wmc {

// Bad input: overlapping windows, mismatched moduli, non-lattice vectors, etc.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A table or search would exceed the configured size guard.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A star point landed within epsilon of the window boundary; the window shift
// must be changed.
class GenericityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace wmc
