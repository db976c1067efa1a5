#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nopx {

// Error taxonomy shared across the library. The CLI maps Io to exit code 2
// and everything else to exit code 1; code 0 is reserved for success.
class Error : public std::runtime_error {
 public:
  enum class Code { Overflow, Parse, Validation, Config, Kind, Index, Io };

  Error(Code code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

inline Error overflow_error(const std::string& what) {
  return Error(Error::Code::Overflow, "overflow: " + what);
}

inline Error parse_error(std::size_t line, const std::string& reason) {
  return Error(Error::Code::Parse,
               "parse error at line " + std::to_string(line) + ": " + reason);
}

inline Error parse_error(const std::string& reason) {
  return Error(Error::Code::Parse, "parse error: " + reason);
}

inline Error validation_error(const std::string& subject, const std::string& violated) {
  return Error(Error::Code::Validation, "invalid " + subject + ": " + violated);
}

inline Error config_error(const std::string& what) {
  return Error(Error::Code::Config, "config error: " + what);
}

inline Error kind_error(const std::string& what) {
  return Error(Error::Code::Kind, what);
}

inline Error index_error(const std::string& what) {
  return Error(Error::Code::Index, what);
}

inline Error io_error(const std::string& what) {
  return Error(Error::Code::Io, what);
}

}  // namespace nopx
