#include "stallwatch/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace stallwatch::log {

Level threshold() {
  static const Level level = [] {
    const char* env = std::getenv("STALLWATCH_LOG_LEVEL");
    const std::string v = env ? env : "";
    if (v == "error") return Level::error;
    if (v == "info") return Level::info;
    if (v == "debug") return Level::debug;
    return Level::warn;
  }();
  return level;
}

void write(Level level, std::string_view message) {
  if (level > threshold()) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::cerr << "[" << kNames[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace stallwatch::log
