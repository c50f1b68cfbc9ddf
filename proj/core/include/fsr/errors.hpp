#pragma once

#include <stdexcept>
#include <string>

namespace fsr {

// Input text could not be parsed; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(msg)
                                      : std::move(msg)),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A model precondition was violated (bad position, unknown type, ...).
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration guard or search-space cap was exceeded.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace fsr
