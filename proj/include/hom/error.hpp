// error.hpp — exception types shared by the hom library

#pragma once

#include <stdexcept>
#include <string>

namespace hom {

// Invalid run configuration: empty ensemble, out-of-range parameter,
// malformed config file.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arguments outside the domain an operation is defined on (e.g. a closed-form
// dip requested for a phase that has none).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace hom
