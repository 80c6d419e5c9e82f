#pragma once

#include <stdexcept>
#include <string>

namespace homforge {

/// Bad input or an operation outside a backend's scope (CLI exit code 2).
struct UserError : std::runtime_error {
    explicit UserError(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedBackend : UserError {
    explicit UnsupportedBackend(const std::string& m) : UserError(m) {}
};

/// A theory-violating outcome. Must never fire on valid inputs (exit code 3).
struct InternalInconsistency : std::logic_error {
    explicit InternalInconsistency(const std::string& m) : std::logic_error(m) {}
};

}  // namespace homforge
