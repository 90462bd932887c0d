#pragma once

#include <stdexcept>
#include <string>

namespace ramcon {

/// Precondition or parameter violation on a public entry point.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Operation needs a connected graph and did not get one.
class DisconnectedGraph : public std::domain_error {
 public:
  explicit DisconnectedGraph(const std::string& what) : std::domain_error(what) {}
};

/// Iterative eigensolver ran out of its iteration budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// File read/write failure; the message carries the path.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ramcon
