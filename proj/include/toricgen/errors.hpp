#pragma once

#include <stdexcept>
#include <string>

namespace toricgen {

// Arguments outside an operation's domain (bad eps range, K > N, ...).
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Subdivision site that is not a cone of the fan.
struct invalid_cone_error : parameter_error {
    using parameter_error::parameter_error;
};

// gcd(c, m) > 1 where an inverse mod m was requested.
struct not_invertible_error : parameter_error {
    using parameter_error::parameter_error;
};

// A formula applied outside the hypotheses it is valid under.
struct hypothesis_error : parameter_error {
    using parameter_error::parameter_error;
};

// Fan data that violates structural requirements (non-square cone,
// non-primitive ray, singular maximal cone, ...).
struct malformed_fan_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a configured materialization cap.
struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An even dimension with no valid epsilon: a counterexample to the
// gcd conjecture the even-dimension construction relies on.
struct conjecture_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace toricgen
