#pragma once

#include <stdexcept>
#include <string>

namespace bnpid {

/// Raised when an argument violates an operation's precondition.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by estimators that receive no draws.
class EmptyBatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mean lower bound above mean upper bound.
class DegenerateEstimateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Family-I rejection sampler ran out of attempts.
class RejectionBudgetError : public std::runtime_error {
public:
    RejectionBudgetError(double lo, double hi, double center, long attempts);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double center() const noexcept { return center_; }
    long attempts() const noexcept { return attempts_; }

private:
    double lo_;
    double hi_;
    double center_;
    long attempts_;
};

}  // namespace bnpid
