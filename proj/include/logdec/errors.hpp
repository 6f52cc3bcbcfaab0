#pragma once

#include <stdexcept>
#include <string>

namespace logdec {

/// Contract violation in an input (bad weights, malformed partition,
/// mismatched spaces, unknown variable, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation was requested beyond its configured size cap
/// (outcome-space size, partition-enumeration cap).
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace logdec
