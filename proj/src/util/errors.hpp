#pragma once

#include <stdexcept>
#include <string>

namespace kgbench {

// Error taxonomy mirrors the CLI exit classes: config=2, provider=3,
// balance=4, io=5. Everything else surfaces as a generic failure.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProviderError : std::runtime_error {
  bool retriable = false;
  ProviderError(const std::string& msg, bool retriable_) : std::runtime_error(msg), retriable(retriable_) {}
};

struct BalanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kgbench
