#pragma once

#include <stdexcept>
#include <string>

namespace qflab {

// Failure categories. The C API maps each one to a stable error code.
enum class Errc {
  argument,
  range,
  domain,
  consistency,
  numeric,
  unsupported,
  degenerate,
  io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace qflab
