#pragma once

#include <stdexcept>
#include <string>

namespace surfcol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad rotation system, unknown ids, unparseable files.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace surfcol
