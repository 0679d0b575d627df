#pragma once

#include <stdexcept>
#include <string>

namespace crnmix {

/// Raised when a requested lattice enumeration exceeds the configured cap.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crnmix
