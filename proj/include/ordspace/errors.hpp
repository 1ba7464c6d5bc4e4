#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ordspace {

struct family_error : std::runtime_error {
  explicit family_error(const std::string& what) : std::runtime_error(what) {}
};

struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

struct usage_error : std::runtime_error {
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// Global element budget for ball enumeration and other exhaustive
/// procedures.  Overridable through the ORDSPACE_BUDGET environment
/// variable; exceeding it raises budget_error instead of thrashing.
inline std::size_t& element_budget() {
  static std::size_t budget = [] {
    if (const char* env = std::getenv("ORDSPACE_BUDGET")) {
      long long v = std::atoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1000000);
  }();
  return budget;
}

inline void charge_budget(std::size_t n, const char* where) {
  if (n > element_budget())
    throw budget_error(std::string(where) + ": element budget exceeded (" +
                       std::to_string(n) + " > " +
                       std::to_string(element_budget()) + ")");
}

}  // namespace ordspace
