#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Raised when a point outside Ω (or on its exceptional set) is evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A search ran past its bracket cap without the predicate becoming true.
class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller asked for something the library does not support
/// (unproved transformation arrow, unbounded domain where a bounded one is required, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace orlicz
