#pragma once

#include <stdexcept>
#include <string>

namespace exmax {

/// Base class of every error the toolkit throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: precondition violation, malformed argument, mismatched operands.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A computation refused to run past a configured size limit.
class LimitExceeded : public UsageError {
public:
    using UsageError::UsageError;
};

/// The mathematics disagreed with itself (failed relation, conflicting propagation, ...).
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace exmax
