#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lienil {

/// Base class for every error raised by the library. The category maps onto
/// the CLI exit-code taxonomy.
class Error : public std::runtime_error {
 public:
  enum class Category { input = 2, budget = 3, field_precondition = 4 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

/// Malformed input: mismatched fields, bad dimensions, non-associative tables.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(Category::input, what) {}
};

/// An exhaustive sweep would exceed the configured tuple budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double required, std::uint64_t budget)
      : Error(Category::budget, what + " (requires " + format(required) +
                                    " cases, budget " +
                                    std::to_string(budget) + ")"),
        required_(required),
        budget_(budget) {}

  double required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  static std::string format(double v) {
    if (v < 1e18) return std::to_string(static_cast<std::uint64_t>(v));
    return std::to_string(v);
  }
  double required_;
  std::uint64_t budget_;
};

/// The field does not meet an algorithm's precondition (e.g. small
/// characteristic for the trace-form radical).
class FieldPrecondition : public Error {
 public:
  explicit FieldPrecondition(const std::string& what)
      : Error(Category::field_precondition, what) {}
};

}  // namespace lienil
