// Shared types and the library error model.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rmt {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  domain = 2,
  no_convergence = 3,
  singular = 4,
  unsupported = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace rmt
