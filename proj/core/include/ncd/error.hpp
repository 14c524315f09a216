#pragma once

#include <stdexcept>
#include <string>

namespace ncd {

/// Raised for malformed instances, files or arguments. The message names the
/// first offending field.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncd
