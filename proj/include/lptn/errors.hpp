#ifndef LPTN_ERRORS_HPP
#define LPTN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lptn {

// Bad user-supplied values: out-of-range parameters, malformed files,
// mismatched shapes. CLI maps these to exit code 2.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Failures of the numerics themselves: rank deficiency, quadrature that does
// not converge, a chain that never leaves one model. CLI exit code 1.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lptn

#endif
