#pragma once

#include <stdexcept>
#include <string>

namespace axifem {

/// Raised for invalid input and failed numerical preconditions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace axifem
