#pragma once

#include <stdexcept>
#include <string>

namespace dedekind {

// Bad arguments: malformed text, mismatched base sets, broken invariants.
struct invalid_input_error : std::runtime_error {
    explicit invalid_input_error(const std::string& what) : std::runtime_error(what) {}
};

// Request is structurally fine but outside the configured capability caps.
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// Two routes that must agree did not.
struct consistency_error : std::runtime_error {
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dedekind
