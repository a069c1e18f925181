#pragma once

#include <stdexcept>
#include <string>

namespace riskcap {

// Bad user input: invariant violations, malformed files, unsupported requests.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed CSV/JSON input; carries the offending row where known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal contract (e.g. a bracket expansion that theory rules out).
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace riskcap
