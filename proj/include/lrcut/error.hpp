#pragma once

#include <stdexcept>
#include <string>

namespace lrcut {

/// Error raised by every module. `code()` is a stable machine-readable tag
/// (e.g. "NotFullRank", "SingularShift") that the CLI emits verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace lrcut
