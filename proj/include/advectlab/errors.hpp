#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace advectlab {

/// Raised when a time step produces NaN or Inf. Carries the offending node
/// (or element) so benchmark rows can report where the blow-up happened.
class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(const std::string& scheme, std::size_t index, double t)
        : std::runtime_error(scheme + ": non-finite value at node " + std::to_string(index) +
                             " (t = " + std::to_string(t) + ")"),
          index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Invalid user or driver configuration (bad mesh size, CFL violation, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace advectlab
