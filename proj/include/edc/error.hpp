#pragma once

#include <stdexcept>
#include <string>

namespace edc {

/// Raised for invalid inputs, malformed files, and contract violations.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace edc
