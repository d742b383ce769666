#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace hkm2 {

/// Arithmetic on two quadratic scalars whose radicands differ.
struct RadicandMismatch : std::domain_error {
    using std::domain_error::domain_error;
};

/// A bracket or exp-ad series produced a nonzero component outside the
/// truncation window. Carries the minimum window height that would have
/// sufficed, when that is known in advance.
struct TruncationExceeded : std::runtime_error {
    explicit TruncationExceeded(const std::string& msg,
                                std::optional<int> required = std::nullopt)
        : std::runtime_error(msg), required_max_height(required) {}
    std::optional<int> required_max_height;
};

/// The requested window would exceed the configured dimension budget.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exact identity that must hold by construction failed; indicates an
/// implementation bug, never an expected runtime condition.
struct VerificationFailed : std::logic_error {
    using std::logic_error::logic_error;
};

/// Same-type nondominance asked for the singular pair i = j.
struct SameRootPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace hkm2
