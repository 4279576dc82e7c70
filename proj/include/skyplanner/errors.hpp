#pragma once

#include <stdexcept>
#include <string>

namespace skyplanner {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Raised when an adaptive integral cannot reach its tolerance. Carries the
/// interval and the last estimate so callers can log something useful.
class NumericIntegrationError : public Error {
public:
    NumericIntegrationError(const std::string& what, double lower, double upper,
                            double estimate, double error_estimate)
        : Error(what + " on [" + std::to_string(lower) + ", " + std::to_string(upper) +
                "]: estimate " + std::to_string(estimate) + ", error " +
                std::to_string(error_estimate)),
          lower_(lower), upper_(upper), estimate_(estimate), error_(error_estimate) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_; }

private:
    double lower_;
    double upper_;
    double estimate_;
    double error_;
};

class InfeasibleTrip : public Error {
public:
    using Error::Error;
};

class NoRelayAvailable : public Error {
public:
    using Error::Error;
};

class EnumerationCapExceeded : public Error {
public:
    EnumerationCapExceeded(std::size_t requested, std::size_t cap)
        : Error("route enumeration refused: " + std::to_string(requested) +
                " serving clusters exceed the enumeration cap of " + std::to_string(cap)),
          cap_(cap) {}

    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

/// An experiment produced nothing to aggregate.
class EmptyResult : public Error {
public:
    using Error::Error;
};

class ContractViolation : public Error {
public:
    using Error::Error;
};

}  // namespace skyplanner
