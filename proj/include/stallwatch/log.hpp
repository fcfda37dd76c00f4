#ifndef STALLWATCH_LOG_HPP
#define STALLWATCH_LOG_HPP

#include <string_view>

namespace stallwatch::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold from STALLWATCH_LOG_LEVEL (error|warn|info|debug), default warn.
Level threshold();

void write(Level level, std::string_view message);
inline void warn(std::string_view m) { write(Level::warn, m); }
inline void info(std::string_view m) { write(Level::info, m); }
inline void error(std::string_view m) { write(Level::error, m); }

}  // namespace stallwatch::log

#endif  // STALLWATCH_LOG_HPP
