#pragma once

#include <stdexcept>
#include <string>

namespace upslab {

/// Dense storage for the requested grid would exceed the configured cap.
class CapExceededError : public std::runtime_error {
public:
  explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A combinatorial enumeration would exceed its work budget.
class BudgetExceededError : public std::runtime_error {
public:
  explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two routes that must agree exactly disagreed; signals an implementation bug.
class InternalCheckError : public std::runtime_error {
public:
  explicit InternalCheckError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace upslab
