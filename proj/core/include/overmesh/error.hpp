#pragma once

#include <stdexcept>
#include <string>

namespace overmesh {

/// Domain error thrown by every module on contract violations
/// (unknown node, duplicate edge, malformed input, ...).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace overmesh
