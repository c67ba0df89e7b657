#pragma once

#include <stdexcept>
#include <string>

namespace oodwn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller-supplied value (shape, range, count).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed file content: bad magic, wrong record size, payload mismatch.
class FormatError : public Error {
public:
    using Error::Error;
};

/// A path could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Factorization or other numerical failure.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Sequence with zero sample variance; cannot be standardized.
class DegenerateSequenceError : public Error {
public:
    using Error::Error;
};

}  // namespace oodwn
