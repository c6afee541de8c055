#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wlg {

// Library-wide error. `code()` is a stable machine-readable identifier
// (e.g. "MassSumNotOne", "ArityMismatch"); what() carries the details.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

inline void require(bool cond, const char* code, const std::string& message) {
    if (!cond) throw Error(code, message);
}

} // namespace wlg
