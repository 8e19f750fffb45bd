#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Exit-code mapping used by the CLI: ConfigError -> 2, NumericalError -> 3,
// IoError -> 4.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace dicke
