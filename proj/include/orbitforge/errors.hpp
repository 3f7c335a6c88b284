#pragma once

#include <stdexcept>
#include <string>

namespace orbitforge {

/// Malformed input or a violated structural invariant. The CLI maps this to
/// exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration or work cap would be exceeded. Exit code 2.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation has no implemented route for this input.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orbitforge
