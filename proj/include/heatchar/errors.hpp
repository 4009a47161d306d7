#pragma once

#include <stdexcept>
#include <string>

namespace heatchar {

/// Input data failed a structural or symmetry validation.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Least-squares extraction could not be carried out reliably.
class FitError : public std::runtime_error {
 public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation exceeded its level/iteration budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace heatchar
