#pragma once

#include <stdexcept>
#include <string>

namespace tdtsw {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite inputs, empty sample counts, and similar numeric misuse.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A named variable, label, atom, or rule could not be found.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid construction parameters (breakpoints, distributions, representatives).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Aggregated output envelope has zero area, so no crisp value exists.
class DegenerateOutputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Exhaustive enumeration was asked to cover too many atoms.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdtsw
