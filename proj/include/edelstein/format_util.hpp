#pragma once

#include <cstdarg>
#include <cstdio>
#include <string>

namespace edelstein {

inline std::string stringf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

inline std::string stringf(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  const int len = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string out;
  if (len > 0) {
    out.resize(static_cast<std::size_t>(len));
    std::vsnprintf(out.data(), out.size() + 1, fmt, args);
  }
  va_end(args);
  return out;
}

/// Shortest text that round-trips the double (17 significant digits).
inline std::string format_double(double v) { return stringf("%.17g", v); }

}  // namespace edelstein
