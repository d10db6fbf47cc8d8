#ifndef OCCUMAX_ERRORS_HPP
#define OCCUMAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace occumax {

// Precondition violations are thrown; non-convergence is never thrown, it is
// reported through a `converged` flag on the result so partial output stays
// available to callers.

struct InvalidMdp : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidWeights : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Fixed-point schemes require deterministic transitions and zero rewards.
struct DeterminismViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonzeroReward : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Limit solvers that assume a communicating MDP refuse anything else.
struct NotCommunicating : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Brute-force enumeration guard.
struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Closed-form root finder could not bracket a sign change.
struct BracketFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File / JSON parsing problems.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace occumax

#endif
