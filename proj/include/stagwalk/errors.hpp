#pragma once

#include <stdexcept>
#include <string>

namespace stagwalk {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a process exit code (validation 1, I/O 2, resource 3).

/// A computation exceeded a configured dense-size limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented invariant (bad graph file, bad cover...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Internal invariant broken; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stagwalk
