#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsili {

inline constexpr const char* kToolVersion = "0.1.0";

// Error taxonomy. The CLI maps ConfigError/SchemaError/StateError to exit
// code 2 and IoError to exit code 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaError : ConfigError {
    using ConfigError::ConfigError;
};
struct StateError : ConfigError {
    using ConfigError::ConfigError;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-instance inconsistent-label flag. Unset only before augmentation.
enum class IlFlag : std::uint8_t { Unset, No, Yes, Na };

const char* to_string(IlFlag flag);

// Parses "NO"/"YES"/"NA" (exact, upper-case); throws SchemaError otherwise.
IlFlag il_flag_from_string(const std::string& s);

enum class LogLevel : int { Quiet = 0, Warn = 1, Info = 2, Debug = 3 };

// Reads TSILI_LOG (quiet|warn|info|debug); defaults to warn.
LogLevel log_level_from_env();

struct Warning {
    std::string code;
    std::string detail;
};

/// Collects structured warnings and mirrors them to stderr as
/// `WARN <code> <detail>` unless the log level is quiet.
class WarningLog {
  public:
    WarningLog() : level_(log_level_from_env()) {}
    explicit WarningLog(LogLevel level) : level_(level) {}

    void emit(std::string code, std::string detail);
    const std::vector<Warning>& entries() const { return entries_; }
    LogLevel level() const { return level_; }

  private:
    std::vector<Warning> entries_;
    LogLevel level_;
};

}  // namespace tsili
