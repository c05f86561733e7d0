#pragma once

#include <stdexcept>
#include <string>

namespace pgbrrt {

/// Malformed scenario / spec / run document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document that violates a domain invariant. The message names
/// the invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Free space too small for rejection sampling to terminate.
class DegenerateEnvironment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTreeError : public std::logic_error {
 public:
  EmptyTreeError() : std::logic_error("query on an empty motion tree") {}
};

/// I/O failure; the message carries the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgbrrt
