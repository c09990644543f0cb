#pragma once

#include <stdexcept>
#include <string>

namespace zolo {

// Raised on precondition violations and on numerical failures that the
// caller can act on (bad fit, unsafe modulus, degenerate input).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Multiplier applied to every documented tolerance. Read once from the
// ZK_TOLERANCE_SCALE environment variable (default 1.0).
double tolerance_scale();

} // namespace zolo
