// Diagnostics on stderr, gated by ZNAV_LOG = error | info | debug.
// Data outputs never share a stream with these messages.

#ifndef ZNAV_LOG_HPP
#define ZNAV_LOG_HPP

#include <cstdio>

namespace znav {

enum class LogLevel : int { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();

template <class... Args>
void log_at(LogLevel lvl, const char* fmt, Args... args) {
  if (static_cast<int>(lvl) > static_cast<int>(log_level())) return;
  std::fprintf(stderr, "[znav] ");
  std::fprintf(stderr, fmt, args...);
  std::fprintf(stderr, "\n");
}

inline void log_error(const char* msg) { log_at(LogLevel::Error, "%s", msg); }
inline void log_info(const char* msg) { log_at(LogLevel::Info, "%s", msg); }

}  // namespace znav

#endif
