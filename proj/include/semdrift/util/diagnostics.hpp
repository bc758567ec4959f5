#pragma once

#include <functional>
#include <string_view>

namespace semdrift::util {

using WarningHandler = std::function<void(std::string_view)>;

// Non-fatal conditions (clamped scores, empty sample passages, ignored
// seeds) are reported here. The default handler writes to stderr.
void warn(std::string_view message);

// Installs `handler` and returns the previous one. Thread-safe.
WarningHandler set_warning_handler(WarningHandler handler);

// Restores the previous handler on destruction; collects warnings for tests.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler) : previous_(set_warning_handler(std::move(handler))) {}
  ~ScopedWarningHandler() { set_warning_handler(std::move(previous_)); }
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace semdrift::util
