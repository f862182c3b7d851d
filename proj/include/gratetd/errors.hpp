#ifndef GRATETD_ERRORS_HPP
#define GRATETD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace gratetd {

/// Exception carrying a stable machine-readable code next to the human message.
/// Codes name the violated contract ("epsmu_below_freespace", "solver_failure", ...)
/// and are what tests and the CLI exit-code mapping key on.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace gratetd

#endif
