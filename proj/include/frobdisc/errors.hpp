#pragma once

#include <stdexcept>
#include <string>

namespace frobdisc {

// Invalid caller input (bad discriminant, even modulus, singular curve, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request exceeds a memory or enumeration budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold did not (e.g. a non-integral Deuring sum).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Census cache file is unreadable or inconsistent with the requested run.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frobdisc
