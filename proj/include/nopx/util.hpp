#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

#include "nopx/error.hpp"

namespace nopx {

inline std::uint64_t ceil_div(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0 : num / den + (num % den != 0 ? 1 : 0);
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw overflow_error(what);
  return out;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw overflow_error(what);
  return out;
}

// ceil(bytes / rate) for a positive real transfer rate. long double keeps the
// division exact for any byte count a 64-bit tensor volume can reach.
inline std::uint64_t ceil_cycles(std::uint64_t bytes, double rate) {
  if (bytes == 0) return 0;
  long double c = std::ceil(static_cast<long double>(bytes) / static_cast<long double>(rate));
  return static_cast<std::uint64_t>(c);
}

// Fixed float formatting used by every report writer: 6 significant digits,
// '.' decimal separator, locale independent, identical bytes on every run.
inline std::string fmt_g6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace nopx
