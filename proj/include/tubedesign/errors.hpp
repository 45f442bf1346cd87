#pragma once

#include <stdexcept>
#include <string>

namespace tubedesign {

// Bad user input: wrong dimensions, degenerate parameters, schema violations.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string &msg) : std::invalid_argument(msg) {}
};

// A computation that could not reach the requested accuracy or a numerical
// precondition that failed at run time.  `kind()` carries a stable tag
// (accuracy-failure, representation-failure, reduction-failure,
// numerical-action-failure, internal-consistency-failure).
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string kind, const std::string &msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string &kind() const { return kind_; }

private:
    std::string kind_;
};

} // namespace tubedesign
