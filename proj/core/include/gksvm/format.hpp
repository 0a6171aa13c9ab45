#pragma once

#include <charconv>
#include <string>

namespace gksvm {

/// Shortest decimal string that parses back to the same double.
inline std::string double_to_string(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace gksvm
