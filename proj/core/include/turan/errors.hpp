#pragma once

#include <stdexcept>
#include <string>

namespace turan {

// Invalid inputs, violated preconditions, unparseable text.
class InvalidError : public std::invalid_argument {
 public:
  explicit InvalidError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that started from valid inputs could not finish
// (non-convergence, solver artifacts, dimension mismatches in files).
class ComputeError : public std::runtime_error {
 public:
  explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace turan
