#pragma once

#include <stdexcept>
#include <string>

namespace pfwd {

/// Thrown when an algorithm fails numerically (eigen-solve divergence,
/// singular linear system, undefined statistics).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on malformed study configurations. Maps to exit code 2 in the CLI.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pfwd
