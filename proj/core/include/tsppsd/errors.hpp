#pragma once

#include <stdexcept>
#include <string>

namespace tsppsd {

/// Precondition violated by caller-supplied data.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested computation exceeds a configured size cap.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsppsd
