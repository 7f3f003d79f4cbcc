#pragma once

#include <stdexcept>
#include <string>

namespace trinet {

// Exit-code contract shared by the library and the CLI:
//   2 = configuration / usage error, 3 = numerical failure, 4 = I/O failure.
enum class ErrorCode : int {
    config = 2,
    numeric = 3,
    io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

// Shape/dimension contract violations (both shapes named in the message).
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorCode::config, what) {}
};

// Non-finite values, blow-up, overflow. Message carries the offending
// time and/or index tuple where known.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCode::numeric, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

} // namespace trinet
