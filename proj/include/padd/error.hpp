#pragma once

#include <stdexcept>
#include <string>

namespace padd {

/// A solver or constructor precondition was violated (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed input file or JSON document (CLI exit code 1).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// literal messages take this overload so hot loops never build a std::string
inline void require(bool condition, const char* message) {
  if (!condition) throw PreconditionError(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace padd
