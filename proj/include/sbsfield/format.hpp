#pragma once

#include <charconv>
#include <string>

namespace sbsfield {

/// Shortest round-trip decimal representation (deterministic CSV cells).
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace sbsfield
