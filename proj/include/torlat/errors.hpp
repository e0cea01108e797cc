#pragma once

#include <stdexcept>
#include <string>

namespace torlat {

// Closure or enumeration hit its configured size cap (often a sign of an
// infinite group).
struct ExceedsBound : std::runtime_error {
  size_t bound;
  explicit ExceedsBound(size_t b, const std::string& what)
      : std::runtime_error(what), bound(b) {}
};

// A computation was refused because it needs more than the configured budget.
struct BudgetExceeded : std::runtime_error {
  unsigned long required;
  unsigned long budget;
  BudgetExceeded(unsigned long req, unsigned long bud, const std::string& what)
      : std::runtime_error(what), required(req), budget(bud) {}
};

// Malformed user input; `pointer` is a JSON-pointer-style path when known.
struct InvalidInput : std::runtime_error {
  std::string pointer;
  explicit InvalidInput(const std::string& what, std::string ptr = "")
      : std::runtime_error(what), pointer(std::move(ptr)) {}
};

}  // namespace torlat
