#pragma once

#include <stdexcept>
#include <string>

namespace cremer {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument values or violated type invariants.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Missing or unreadable files.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input data; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line)
        : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Model file cannot be loaded: version mismatch, truncation, schema violation.
class ModelLoadError : public Error {
public:
    explicit ModelLoadError(const std::string& msg) : Error(msg) {}
};

} // namespace cremer
