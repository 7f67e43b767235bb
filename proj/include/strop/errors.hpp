#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace strop {

/// All domain errors carry a stable machine-readable code next to the
/// human-readable message (CLI maps codes to exit status and JSON output).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace strop
