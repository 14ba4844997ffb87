#pragma once

#include <stdexcept>

namespace twowell {

// A state or matrix violates a structural invariant (norm, trace, hermiticity).
class invalid_state_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An eigensolve or other numeric kernel produced an unusable result.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The request is outside what the moment engine supports (e.g. degree > 4).
class unsupported_request_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Fock truncation cannot represent the requested state faithfully.
class insufficient_cutoff_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twowell
