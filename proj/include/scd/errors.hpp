#pragma once

#include <stdexcept>
#include <string>

namespace scd {

// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A guarded computation would exceed its configured budget (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

// A size threshold required by a theoretical step is not met (CLI exit code 3).
class ThresholdError : public std::runtime_error {
public:
    ThresholdError(const std::string& what, std::string quantity, long long have, long long need)
        : std::runtime_error(what), quantity_(std::move(quantity)), have_(have), need_(need) {}
    const std::string& quantity() const { return quantity_; }
    long long have() const { return have_; }
    long long need() const { return need_; }

private:
    std::string quantity_;
    long long have_;
    long long need_;
};

}  // namespace scd
