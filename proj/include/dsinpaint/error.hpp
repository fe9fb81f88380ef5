#pragma once

#include <stdexcept>
#include <string>

namespace dsinpaint {

/// Invalid parameter or violated numerical precondition (CLI exit code 3).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// File could not be read, written or decoded (CLI exit code 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed command line or configuration (CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dsinpaint
