#pragma once

#include <stdexcept>
#include <string>

namespace smoothcircle {

// Input outside an operation's domain (sigma <= 0, u < 1, y < 2, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An enumeration or sieve exceeded its configured budget.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative solver or quadrature failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact accumulator would exceed its integer width.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

}  // namespace smoothcircle
