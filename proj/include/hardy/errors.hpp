#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Malformed or out-of-domain argument (dimension mismatch, off-sphere point, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation would read entries outside the certified block of
/// a truncated operator. Carries the largest iterate count still usable.
class TrustExhausted : public std::runtime_error {
 public:
  TrustExhausted(const std::string& what, int max_usable_m)
      : std::runtime_error(what + " (max usable m = " + std::to_string(max_usable_m) + ")"),
        max_usable_m_(max_usable_m) {}

  int max_usable_m() const noexcept { return max_usable_m_; }

 private:
  int max_usable_m_;
};

/// Experiment file that fails to parse or validate.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardy
