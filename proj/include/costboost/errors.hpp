#ifndef COSTBOOST_ERRORS_HPP
#define COSTBOOST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace costboost {

// Malformed or inconsistent inputs (dimension mismatches, bad files, bad flags).
// CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Inputs exceed the desk-scale limits (k > 12 subset enumeration, |J| > 5 grids).
class CapacityError : public InputError {
public:
    explicit CapacityError(const std::string& msg) : InputError(msg) {}
};

// A declared guarantee or precondition does not hold (non-boostable z,
// unattainable trivial-learner request, unbounded list). CLI exit code 1.
class ContractError : public std::runtime_error {
public:
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical breakdown inside the solver (degenerate pivot, iteration limit).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace costboost

#endif
