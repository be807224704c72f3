#pragma once

#include <stdexcept>
#include <string>

namespace apr {

// Malformed input: unknown labels, bad files, ill-typed expressions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured cap (node budget, state-space size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated an operation's precondition (e.g. graph of an open pre-proof).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace apr
