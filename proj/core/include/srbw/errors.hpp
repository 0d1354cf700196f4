#pragma once
#include <stdexcept>
#include <string>

namespace srbw {

// Named error conditions of the library surface. All derive from
// std::runtime_error so callers may catch coarsely or by name.

struct OffGridError : std::runtime_error {
    explicit OffGridError(const std::string& what) : std::runtime_error(what) {}
};

struct NotRepresentableError : std::runtime_error {
    explicit NotRepresentableError(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatchError : std::runtime_error {
    explicit ShapeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRegimeError : std::runtime_error {
    explicit DegenerateRegimeError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace srbw
