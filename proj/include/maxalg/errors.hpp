#pragma once

#include <stdexcept>
#include <string>

namespace maxalg {

// Base for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operand shapes are incompatible (matrix product, ⊕ of unequal sizes, ...).
struct shape_error : error {
    using error::error;
};

// A stated hypothesis of an operation does not hold (reducible input,
// jsr out of range, enumeration guard exceeded, ...). The message names
// the failed hypothesis.
struct precondition_error : error {
    using error::error;
};

// Malformed input file or token. Carries enough context to locate the
// offending token.
struct parse_error : error {
    parse_error(const std::string& context, const std::string& message)
        : error(context.empty() ? message : context + ": " + message) {}
};

}  // namespace maxalg
