#pragma once

#include <stdexcept>
#include <string>

namespace zll {

// Solver or quadrature failure (CLI exit code 2).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Cache fingerprint conflict (CLI exit code 3).
class cache_conflict_error : public std::runtime_error {
 public:
  explicit cache_conflict_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zll
