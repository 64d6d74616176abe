#include "znav/log.hpp"

#include <cstdlib>
#include <cstring>

namespace znav {

LogLevel log_level() {
  static const LogLevel lvl = [] {
    const char* env = std::getenv("ZNAV_LOG");
    if (env == nullptr) return LogLevel::Error;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Error;
  }();
  return lvl;
}

}  // namespace znav
