#pragma once
#include <stdexcept>

namespace pst {

// Bad input: failed to parse, or a precondition does not hold (CLI exit 2).
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A configurable resource limit was exceeded (CLI exit 3).
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precision escalation hit the bit cap before the result could be certified.
struct PrecisionError : BudgetError {
    using BudgetError::BudgetError;
};

} // namespace pst
