#pragma once

#include <charconv>
#include <string>

namespace enex {

/// Shortest decimal form that round-trips exactly. Keeps every output file
/// byte-stable across runs and lossless under reload.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace enex
