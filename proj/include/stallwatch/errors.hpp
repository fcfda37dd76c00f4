#ifndef STALLWATCH_ERRORS_HPP
#define STALLWATCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stallwatch {

// Invalid camera/stall configuration (degenerate polygon, bad thresholds, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input (detection files, scripts, embeddings).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// API misuse, e.g. stepping a tracker backwards in time.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stallwatch

#endif  // STALLWATCH_ERRORS_HPP
