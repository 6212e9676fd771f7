#pragma once

#include <stdexcept>
#include <string>

namespace nscurve {

// Invalid user-facing input: bad parameter, composite conductor, singular model.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Two independent computations disagreed. Always indicates a bug.
class CrossCheckError : public std::runtime_error {
 public:
  explicit CrossCheckError(const std::string& what) : std::runtime_error(what) {}
};

// Requested accuracy is not reachable at the working precision or term cap.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nscurve
