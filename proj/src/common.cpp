#include "tsili/common.hpp"

#include <cstdlib>
#include <iostream>

namespace tsili {

const char* to_string(IlFlag flag) {
    switch (flag) {
        case IlFlag::Unset: return "UNSET";
        case IlFlag::No: return "NO";
        case IlFlag::Yes: return "YES";
        case IlFlag::Na: return "NA";
    }
    return "UNSET";
}

IlFlag il_flag_from_string(const std::string& s) {
    if (s == "NO") return IlFlag::No;
    if (s == "YES") return IlFlag::Yes;
    if (s == "NA") return IlFlag::Na;
    throw SchemaError("invalid isInconsistentLabel value: \"" + s + "\"");
}

LogLevel log_level_from_env() {
    const char* env = std::getenv("TSILI_LOG");
    if (env == nullptr) return LogLevel::Warn;
    std::string v(env);
    if (v == "quiet" || v == "0") return LogLevel::Quiet;
    if (v == "info" || v == "2") return LogLevel::Info;
    if (v == "debug" || v == "3") return LogLevel::Debug;
    return LogLevel::Warn;
}

void WarningLog::emit(std::string code, std::string detail) {
    if (level_ >= LogLevel::Warn) {
        std::cerr << "WARN " << code << " " << detail << "\n";
    }
    entries_.push_back(Warning{std::move(code), std::move(detail)});
}

}  // namespace tsili
