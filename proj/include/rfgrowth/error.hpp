#pragma once

#include <stdexcept>
#include <string>

namespace rfg {

// Domain error with a short machine-readable reason code ("jacobi",
// "dimension", "cap", ...). The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string reason, const std::string& message)
      : std::runtime_error(message), reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

[[noreturn]] inline void fail(const std::string& reason, const std::string& message) {
  throw Error(reason, message);
}

inline void require(bool cond, const std::string& reason, const std::string& message) {
  if (!cond) fail(reason, message);
}

}  // namespace rfg
