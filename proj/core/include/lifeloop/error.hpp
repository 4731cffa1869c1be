#pragma once

#include <stdexcept>
#include <string>

namespace lifeloop {

/// Raised when an input violates a domain invariant (malformed interval,
/// mixed subjects, negative nutrient, bad config field, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a file cannot be opened or read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lifeloop
