#pragma once

#include <stdexcept>
#include <string>

namespace brauer {

// Every failure carries a stable code string so callers (and the CLI) can map it
// to exit statuses and report fields without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace brauer
