#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace evidentia {

// Domain error with a stable machine-readable code ("incoherent-inputs",
// "no-such-context", ...) alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace evidentia
