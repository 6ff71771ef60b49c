#pragma once

#include <stdexcept>
#include <string>

namespace k3lat {

/// Bad input: malformed data, violated preconditions, mismatched lattices.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object broke one of its own invariants. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InvariantViolation(message);
}

}  // namespace k3lat
