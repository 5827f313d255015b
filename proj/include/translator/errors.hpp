#pragma once

#include <stdexcept>
#include <string>

namespace translator {

/// Argument outside the domain where an operation is defined
/// (singular radius, dimension too small, empty window, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to deliver its contract: barrier violated
/// beyond tolerance, iteration did not converge, bracket collapsed.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace translator
