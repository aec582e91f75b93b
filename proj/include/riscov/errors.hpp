#pragma once

#include <stdexcept>
#include <string>

namespace riscov {

/// Malformed input document: JSON syntax error, wrong type, missing or
/// unknown field. The message carries the field path or byte offset.
class parse_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A scenario invariant does not hold. The message names the offending
/// entity id.
class validation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Two maps that must agree in shape or origin scenario do not.
class mismatch_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace riscov
