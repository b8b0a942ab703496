#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

// Error categories shared between the C++ core and the C API status codes.
enum class errc {
  ok = 0,
  invalid_argument,
  precondition,
  cfl_violation,
  io_failure,
  bad_magic,
  bad_version,
  truncated,
  internal,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

inline void require(bool cond, errc code, const std::string& msg) {
  if (!cond) throw error(code, msg);
}

}  // namespace sqg
